#pragma once

#include <cstdint>
#include <vector>

#include "dyngraph/graph/digraph.hpp"

namespace dyngraph {

// Strongly connected components numbered in topological order of the
// condensation: an edge u -> v implies component[u] <= component[v].
struct SccDecomposition {
  std::vector<std::uint32_t> component;
  std::vector<std::vector<Vertex>> members;

  std::size_t count() const { return members.size(); }
};

// Iterative Tarjan.
SccDecomposition strongly_connected_components(const Digraph& g);

// Sparse subgraph with the same SCCs: for every component an in-tree and an
// out-tree rooted at its smallest vertex.
Digraph scc_skeleton(const Digraph& g, const SccDecomposition& scc);

}  // namespace dyngraph
