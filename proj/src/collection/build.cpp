#include "dyngraph/collection/build.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dyngraph {

namespace {

void require_full(const SwitchReporter& T) {
  if (T.switched_on_count() != T.num_vertices()) throw std::invalid_argument("collection build needs W = V");
}

void store_tree(PathCollection& pc, const PathTree& tree) {
  for (Vertex t = 0; t < tree.dist.size(); ++t)
    if (t != tree.root && tree.reachable(t)) pc.add(tree.path_to(t));
}

}  // namespace

double congestion_threshold(std::size_t n, std::size_t h, double tau) { return double(n) * double(h) * tau; }
double congestion_cap(std::size_t n, std::size_t h, double tau) { return 2.0 * congestion_threshold(n, h, tau); }

double randomized_congestion_bound(std::size_t n, std::size_t h, double c) {
  return c * double(h) * double(n) * std::max(1.0, std::log(double(n)));
}

PathCollection build_collection_threshold(SwitchReporter& T, double tau) {
  if (!(tau > 0)) throw std::invalid_argument("tau must be positive");
  require_full(T);
  const std::size_t n = T.num_vertices();
  const double threshold = congestion_threshold(n, T.hop_bound(), tau);
  PathCollection pc(n);
  for (Vertex s = 0; s < n; ++s) {
    for (Vertex v = 0; v < n; ++v)
      if (!pc.is_congested(v) && double(pc.congestion(v)) > threshold) {
        pc.add_congested(v);
        T.switch_set(v, false);
      }
    if (pc.is_congested(s)) continue;
    store_tree(pc, T.sssp_tree_from(s));
  }
  for (Vertex v : pc.congested()) T.switch_set(v, true);
  return pc;
}

PathCollection build_collection_randomized(SwitchReporter& T, std::span<const Vertex> c0) {
  require_full(T);
  const std::size_t n = T.num_vertices();
  std::vector<Vertex> pending(c0.begin(), c0.end());
  for (Vertex v : pending) check_vertex(n, v);
  std::sort(pending.begin(), pending.end());
  pending.erase(std::unique(pending.begin(), pending.end()), pending.end());
  const std::size_t k = std::min(2 * pending.size(), n);
  PathCollection pc(n);
  std::size_t next = 0;  // into pending
  for (std::size_t step = 0; step < k; ++step) {
    while (next < pending.size() && pc.is_congested(pending[next])) ++next;
    Vertex c = kNoVertex;
    if (step % 2 == 0 && next < pending.size()) {
      c = pending[next++];
    } else {
      for (Vertex v = 0; v < n; ++v)
        if (!pc.is_congested(v) && (c == kNoVertex || pc.congestion(v) > pc.congestion(c))) c = v;
    }
    // Earlier picks may still end a path; only intermediates must be in W.
    store_tree(pc, T.sssp_tree_from(c, true));
    pc.add_congested(c);
    T.switch_set(c, false);
  }
  for (Vertex v : pc.congested()) T.switch_set(v, true);
  return pc;
}

}  // namespace dyngraph
