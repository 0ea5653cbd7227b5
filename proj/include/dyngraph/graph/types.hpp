#pragma once

#include <cstdint>
#include <limits>
#include <vector>

namespace dyngraph {

using Vertex = std::uint32_t;
using Dist = std::int32_t;

inline constexpr Dist kInfDist = std::numeric_limits<Dist>::max();
inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();

// Full replacement of the incidence of one vertex: after the patch the
// out-neighbours of v are exactly `out` and its in-neighbours exactly `in`.
struct VertexPatch {
  Vertex v = 0;
  std::vector<Vertex> out;
  std::vector<Vertex> in;
};

// Shortest path tree rooted at `root`: pred[root] and unreachable vertices
// hold kNoVertex, dist holds kInfDist for unreachable vertices.
struct PathTree {
  Vertex root = 0;
  std::vector<Vertex> pred;
  std::vector<Dist> dist;

  bool reachable(Vertex v) const { return dist[v] != kInfDist; }
  // Vertex sequence root -> v, empty if v is unreachable.
  std::vector<Vertex> path_to(Vertex v) const;
};

}  // namespace dyngraph
