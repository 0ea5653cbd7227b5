#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dyngraph/graph/digraph.hpp"
#include "dyngraph/harness/trace.hpp"

namespace dyngraph::harness {

// Profiles: random, delete-heavy, phase-aligned, hub, vertex.
struct GenProfile {
  std::string name = "random";
  std::size_t n = 16;
  std::size_t steps = 100;  // update events; query blocks are extra
  std::uint64_t seed = 0;
  double density = 0.1;  // target fraction of the n(n-1) possible edges
  std::size_t query_every = 5;
  std::string structure = "sssp";  // picks the query mix
  std::size_t delta = 0;           // phase length, 0: ceil(n/4)
  std::size_t h = 0;               // hop bound for hub selection, 0: ceil(n^{1/3})
  std::size_t path_queries = 2;    // qp per query block
};

const std::vector<std::string>& profile_names();

Trace gen_trace(const GenProfile& profile);

// Number of nontrivial root paths of the h-truncated BFS trees of all sources
// that contain each vertex, endpoints included.
std::vector<std::uint64_t> tree_congestion(const Digraph& g, std::size_t h);

// Most congested vertex under tree_congestion, ties to the smallest id.
Vertex hub_vertex(const Digraph& g, std::size_t h);

}  // namespace dyngraph::harness
