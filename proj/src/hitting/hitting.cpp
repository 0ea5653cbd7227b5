#include "dyngraph/hitting/hitting.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dyngraph {

std::vector<Vertex> greedy_hitting_set(std::size_t n, std::span<const std::vector<Vertex>> family, std::size_t k) {
  if (family.empty()) return {};
  if (k == 0) throw std::invalid_argument("greedy hitting set needs k >= 1");
  std::vector<std::vector<std::size_t>> incidence(n);
  std::vector<std::size_t> count(n, 0);
  std::vector<std::vector<Vertex>> sets(family.size());
  for (std::size_t i = 0; i < family.size(); ++i) {
    std::vector<Vertex>& set = sets[i];
    set = family[i];
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    if (set.size() < k)
      throw std::invalid_argument("set " + std::to_string(i) + " has fewer than " + std::to_string(k) + " elements");
    for (Vertex v : set) {
      check_vertex(n, v);
      incidence[v].push_back(i);
      ++count[v];
    }
  }
  std::vector<std::uint8_t> hit(family.size(), 0);
  std::size_t remaining = family.size();
  std::vector<Vertex> out;
  std::vector<std::uint8_t> chosen(n, 0);
  while (remaining > 0) {
    Vertex best = 0;
    for (Vertex v = 1; v < n; ++v)
      if (count[v] > count[best]) best = v;
    out.push_back(best);
    chosen[best] = 1;
    for (std::size_t i : incidence[best]) {
      if (hit[i]) continue;
      hit[i] = 1;
      --remaining;
      for (Vertex w : sets[i])
        if (!chosen[w]) --count[w];
    }
    count[best] = 0;
  }
  return out;
}

std::size_t greedy_size_bound(std::size_t n, std::size_t k, std::size_t family_size, const HittingConfig& config) {
  if (family_size == 0) return 0;
  const double ratio = static_cast<double>(n) / static_cast<double>(k);
  return static_cast<std::size_t>(std::ceil(config.greedy_constant * ratio * std::log(double(family_size)))) +
         static_cast<std::size_t>(std::ceil(ratio)) + 1;
}

bool hits_all(std::span<const std::vector<Vertex>> family, std::span<const Vertex> set, std::size_t n) {
  std::vector<std::uint8_t> in(n, 0);
  for (Vertex v : set) in[v] = 1;
  for (const auto& s : family)
    if (std::none_of(s.begin(), s.end(), [&](Vertex v) { return in[v] != 0; })) return false;
  return true;
}

std::vector<std::vector<Vertex>> tree_depth_paths(const PathTree& tree, std::size_t depth) {
  std::vector<std::vector<Vertex>> out;
  if (depth == 0) return out;
  for (Vertex v = 0; v < tree.dist.size(); ++v) {
    if (tree.dist[v] != static_cast<Dist>(depth)) continue;
    auto path = tree.path_to(v);
    path.erase(path.begin());
    out.push_back(std::move(path));
  }
  return out;
}

std::vector<Vertex> tree_path_hitting(std::size_t n, std::span<const PathTree> trees, std::size_t depth) {
  std::vector<std::vector<Vertex>> family;
  for (const PathTree& t : trees) {
    auto paths = tree_depth_paths(t, depth);
    family.insert(family.end(), std::make_move_iterator(paths.begin()), std::make_move_iterator(paths.end()));
  }
  return greedy_hitting_set(n, family, depth);
}

BlockPartition partition_blocks(SccDecomposition scc, std::size_t n, std::size_t d) {
  BlockPartition p;
  p.block_of.assign(n, 0);
  const std::size_t k = scc.count();
  std::size_t i = 0;
  while (i < k) {
    std::size_t j = i, total = 0;
    while (j < k && total + scc.members[j].size() <= d) total += scc.members[j++].size();
    const bool small = j > i;
    if (!small) j = i + 1;  // single SCC larger than d
    std::vector<Vertex> block;
    for (std::size_t c = i; c < j; ++c) block.insert(block.end(), scc.members[c].begin(), scc.members[c].end());
    std::sort(block.begin(), block.end());
    for (Vertex v : block) p.block_of[v] = static_cast<std::uint32_t>(p.blocks.size());
    p.ranges.emplace_back(i, j - 1);
    p.blocks.push_back(std::move(block));
    p.small.push_back(small ? 1 : 0);
    i = j;
  }
  p.scc = std::move(scc);
  return p;
}

WeakHittingSet weak_hitting_set(const Digraph& g, std::size_t h, std::size_t d) {
  const std::size_t n = g.num_vertices();
  if (h < 1 || d < 1 || h > n || d > n) throw std::invalid_argument("weak hitting set needs 1 <= h, d <= n");
  if (d * h < 6 * n) throw std::invalid_argument("weak hitting set needs d * h >= 6n");
  WeakHittingSet out;
  out.ell = d * h / (6 * n);
  out.partition = partition_blocks(strongly_connected_components(g), n, d);
  for (const auto& block : out.partition.blocks) {
    std::vector<std::uint8_t> keep(n, 0);
    for (Vertex v : block) keep[v] = 1;
    const Digraph sub = g.induced(keep);
    std::vector<PathTree> trees;
    for (Vertex x : block) trees.push_back(bfs_tree(sub, x, static_cast<int>(out.ell)));
    const auto hb = tree_path_hitting(n, trees, out.ell);
    out.hitting.insert(out.hitting.end(), hb.begin(), hb.end());
  }
  std::sort(out.hitting.begin(), out.hitting.end());
  return out;
}

Vertex weak_certificate(const std::vector<std::vector<Dist>>& dist, std::span<const Vertex> hitting, Vertex s,
                        Vertex t, std::size_t h) {
  for (Vertex v : hitting)
    if (dist[s][v] <= static_cast<Dist>(h) && dist[v][t] != kInfDist) return v;
  return kNoVertex;
}

}  // namespace dyngraph
