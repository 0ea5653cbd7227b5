#include "dyngraph/reporting/switch_reporter.hpp"

#include <algorithm>
#include <stdexcept>

namespace dyngraph {

namespace {

Vertex plus(Vertex v) { return 2 * v; }
Vertex minus(Vertex v) { return 2 * v + 1; }

ReporterConfig normalized(ReporterConfig c) {
  if (c.n == 0) throw std::invalid_argument("reporter needs n >= 1");
  if (c.h < 1 || c.h > c.n) throw std::invalid_argument("reporter needs 1 <= h <= n");
  if (c.block_size == 0) c.block_size = (c.n + 1) / 2;
  c.block_size = std::min(c.block_size, c.n);
  return c;
}

Digraph split_graph(const Digraph& g) {
  const std::size_t n = g.num_vertices();
  Digraph s(2 * n);
  for (Vertex v = 0; v < n; ++v) s.set_edge(plus(v), minus(v), true);
  for (auto [u, v] : g.edges()) s.set_edge(minus(u), plus(v), true);
  return s;
}

BlocksReporter<HDistOracle> make_blocks(const ReporterConfig& c, const Digraph& initial) {
  std::uint64_t counter = 0;
  auto factory = [&c, &counter](const Digraph& g) {
    HDistConfig hc;
    hc.n = g.num_vertices();
    hc.h = 2 * c.h;
    hc.mode = c.mode;
    hc.cap = c.cap;
    hc.seed = c.seed + 0x9e3779b97f4a7c15ULL * ++counter;
    // Only the source oracle (the first one built, on 2n vertices) may keep all pairs.
    hc.all_pairs = c.source_all_pairs && counter == 1 && c.variant == BlocksVariant::kBinarySearch;
    return HDistOracle(hc, g);
  };
  // Blocks of b original vertices are blocks of 2b split vertices.
  return BlocksReporter<HDistOracle>(split_graph(initial), 2 * c.block_size, c.variant, factory);
}

}  // namespace

SwitchReporter::SwitchReporter(const ReporterConfig& config) : SwitchReporter(config, Digraph(config.n)) {}

SwitchReporter::SwitchReporter(const ReporterConfig& config, const Digraph& initial)
    : config_(normalized(config)), graph_(initial), on_(config_.n, 1), blocks_(make_blocks(config_, initial)) {
  if (initial.num_vertices() != config_.n) throw std::invalid_argument("initial graph size mismatch");
}

Digraph SwitchReporter::induced_graph() const { return graph_.induced(on_); }

std::size_t SwitchReporter::switched_on_count() const {
  return static_cast<std::size_t>(std::count(on_.begin(), on_.end(), std::uint8_t{1}));
}

void SwitchReporter::edge_update(Vertex u, Vertex v, bool present) {
  check_vertex(config_.n, u);
  check_vertex(config_.n, v);
  if (u == v) throw std::invalid_argument("self-loop");
  if (!graph_.set_edge(u, v, present)) return;
  blocks_.edge_update(minus(u), plus(v), present);
}

void SwitchReporter::vertex_batch_update(std::span<const VertexPatch> patches) {
  if (patches.empty()) return;
  std::vector<VertexPatch> lifted;
  lifted.reserve(2 * patches.size());
  for (const VertexPatch& p : patches) {
    check_vertex(config_.n, p.v);
    graph_.apply_patch(p);
    // v+ keeps its switch edge; v- keeps only the switch edge as in-edge.
    VertexPatch in{plus(p.v), {}, {}}, out{minus(p.v), {}, {}};
    if (on_[p.v]) {
      in.out.push_back(minus(p.v));
      out.in.push_back(plus(p.v));
    }
    for (Vertex w : p.in) in.in.push_back(minus(w));
    for (Vertex w : p.out) out.out.push_back(plus(w));
    lifted.push_back(std::move(in));
    lifted.push_back(std::move(out));
  }
  blocks_.vertex_batch_update(lifted);
}

void SwitchReporter::switch_set(Vertex v, bool on) {
  check_vertex(config_.n, v);
  if ((on_[v] != 0) == on) return;
  on_[v] = on ? 1 : 0;
  blocks_.edge_update(plus(v), minus(v), on);
}

Dist SwitchReporter::distance(Vertex s, Vertex t) const {
  check_vertex(config_.n, s);
  check_vertex(config_.n, t);
  if (!on_[s] || !on_[t]) return kInfDist;
  const auto& top = blocks_.level(blocks_.num_blocks() - 1);
  const Dist d = top.pair_distance(plus(s), plus(t));
  return d == kInfDist ? kInfDist : d / 2;
}

std::vector<PredecessorAnswer> SwitchReporter::submatrix_predecessors(
    std::span<const Vertex> sources, std::span<const std::pair<Vertex, Vertex>> pairs, bool off_targets) {
  std::vector<Vertex> inner_sources;
  for (Vertex s : sources) {
    check_vertex(config_.n, s);
    inner_sources.push_back(plus(s));
  }
  std::vector<std::pair<Vertex, Vertex>> inner_pairs;
  std::vector<std::size_t> where(pairs.size(), SIZE_MAX);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [s, t] = pairs[i];
    check_vertex(config_.n, s);
    check_vertex(config_.n, t);
    if (!on_[s] || (!on_[t] && !off_targets)) continue;
    where[i] = inner_pairs.size();
    inner_pairs.emplace_back(plus(s), plus(t));
  }
  const auto inner = blocks_.submatrix_predecessors(inner_sources, inner_pairs);
  std::vector<PredecessorAnswer> out(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (where[i] == SIZE_MAX) continue;
    const PredecessorAnswer& a = inner[where[i]];
    if (a.dist == kInfDist) continue;
    out[i].dist = a.dist / 2;
    // The predecessor of t+ is u- for an original edge u -> t.
    if (a.pred != kNoVertex) out[i].pred = (a.pred - 1) / 2;
  }
  return out;
}

PathTree SwitchReporter::sssp_tree_from(Vertex s, bool off_targets) {
  const std::size_t n = config_.n;
  std::vector<std::pair<Vertex, Vertex>> pairs;
  pairs.reserve(n);
  for (Vertex t = 0; t < n; ++t) pairs.emplace_back(s, t);
  const Vertex src[1] = {s};
  const auto ans = submatrix_predecessors(src, pairs, off_targets);
  PathTree tree{s, std::vector<Vertex>(n, kNoVertex), std::vector<Dist>(n, kInfDist)};
  for (Vertex t = 0; t < n; ++t) {
    tree.pred[t] = ans[t].pred;
    tree.dist[t] = ans[t].dist;
  }
  return tree;
}

bool SwitchReporter::odd_coefficient_present(Vertex s, Vertex t) const {
  const auto& top = blocks_.level(blocks_.num_blocks() - 1);
  for (std::size_t k = 1; k <= 2 * config_.h; k += 2)
    if (top.coefficient_nonzero(plus(s), plus(t), k)) return true;
  return false;
}

}  // namespace dyngraph
