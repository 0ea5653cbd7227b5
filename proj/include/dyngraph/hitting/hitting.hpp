#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "dyngraph/graph/digraph.hpp"
#include "dyngraph/graph/scc.hpp"
#include "dyngraph/graph/types.hpp"

namespace dyngraph {

struct HittingConfig {
  double greedy_constant = 1.0;  // c in ceil(c (n/k) ln|F|) + ceil(n/k) + 1
};

// Greedy set cover dual: repeatedly take the element lying in the most
// unhit sets, ties to the smallest id. Throws if a set has fewer than k
// distinct elements or k == 0 with a nonempty family.
std::vector<Vertex> greedy_hitting_set(std::size_t n, std::span<const std::vector<Vertex>> family, std::size_t k);

std::size_t greedy_size_bound(std::size_t n, std::size_t k, std::size_t family_size, const HittingConfig& config = {});

bool hits_all(std::span<const std::vector<Vertex>> family, std::span<const Vertex> set, std::size_t n);

// Vertex sets of the root-to-depth paths of a tree, root excluded, so every
// set has exactly `depth` vertices.
std::vector<std::vector<Vertex>> tree_depth_paths(const PathTree& tree, std::size_t depth);

// Hits every depth-`depth` root path (root excluded) of every tree.
std::vector<Vertex> tree_path_hitting(std::size_t n, std::span<const PathTree> trees, std::size_t depth);

struct BlockPartition {
  SccDecomposition scc;
  std::vector<std::pair<std::size_t, std::size_t>> ranges;  // inclusive SCC index ranges
  std::vector<std::vector<Vertex>> blocks;
  std::vector<std::uint8_t> small;
  std::vector<std::uint32_t> block_of;

  std::size_t count() const { return blocks.size(); }
};

// Longest-prefix rule: take the longest run of consecutive SCCs of total size
// <= d, or a single SCC larger than d.
BlockPartition partition_blocks(SccDecomposition scc, std::size_t n, std::size_t d);

struct WeakHittingSet {
  std::vector<Vertex> hitting;
  BlockPartition partition;
  std::size_t ell = 0;
};

// Union over blocks B of hitting sets for the depth-ell paths of the BFS
// trees of G[B], ell = floor(dh / 6n). Requires d h >= 6n and 1 <= d, h <= n.
WeakHittingSet weak_hitting_set(const Digraph& g, std::size_t h, std::size_t d);

// A vertex v of H with delta(s, v) <= h and t reachable from v, or kNoVertex.
// dist is the unbounded distance matrix of G.
Vertex weak_certificate(const std::vector<std::vector<Dist>>& dist, std::span<const Vertex> hitting, Vertex s,
                        Vertex t, std::size_t h);

}  // namespace dyngraph
