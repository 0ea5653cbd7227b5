#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "dyngraph/graph/types.hpp"

namespace dyngraph {

// Dense unweighted digraph without self-loops.
class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(std::size_t n) : n_(n), adj_(n * n, 0) {}

  std::size_t num_vertices() const { return n_; }
  bool has_edge(Vertex u, Vertex v) const { return adj_[std::size_t{u} * n_ + v] != 0; }
  // Returns true when the edge set changed. Self-loops are rejected.
  bool set_edge(Vertex u, Vertex v, bool present);

  std::vector<Vertex> out_neighbors(Vertex v) const;
  std::vector<Vertex> in_neighbors(Vertex v) const;
  std::vector<std::pair<Vertex, Vertex>> edges() const;
  std::size_t edge_count() const;

  void apply_patch(const VertexPatch& patch);
  // Current incidence of v written as a patch.
  VertexPatch patch_of(Vertex v) const;
  // Same vertex set, only edges with both ends in `keep`.
  Digraph induced(std::span<const std::uint8_t> keep) const;

  bool operator==(const Digraph&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> adj_;
};

void check_vertex(std::size_t n, Vertex v);

// Breadth-first tree from s truncated at h hops (h < 0: unbounded); each
// vertex takes its smallest-id predecessor on the previous layer.
PathTree bfs_tree(const Digraph& g, Vertex s, int h = -1);

}  // namespace dyngraph
