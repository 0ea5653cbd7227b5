#include "dyngraph/graph/digraph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace dyngraph {

void check_vertex(std::size_t n, Vertex v) {
  if (v >= n) throw std::out_of_range("vertex " + std::to_string(v) + " out of range (n=" + std::to_string(n) + ")");
}

std::vector<Vertex> PathTree::path_to(Vertex v) const {
  std::vector<Vertex> path;
  if (dist[v] == kInfDist) return path;
  for (Vertex x = v; x != kNoVertex; x = pred[x]) {
    path.push_back(x);
    if (x == root) break;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

PathTree bfs_tree(const Digraph& g, Vertex s, int h) {
  const std::size_t n = g.num_vertices();
  check_vertex(n, s);
  PathTree tree{s, std::vector<Vertex>(n, kNoVertex), std::vector<Dist>(n, kInfDist)};
  tree.dist[s] = 0;
  std::vector<Vertex> layer{s};
  for (Dist d = 1; !layer.empty() && (h < 0 || d <= h); ++d) {
    std::vector<Vertex> next;
    for (Vertex v = 0; v < n; ++v) {
      if (tree.dist[v] != kInfDist) continue;
      for (Vertex u : layer)
        if (g.has_edge(u, v) && (tree.pred[v] == kNoVertex || u < tree.pred[v])) tree.pred[v] = u;
      if (tree.pred[v] != kNoVertex) next.push_back(v);
    }
    for (Vertex v : next) tree.dist[v] = d;
    layer = std::move(next);
  }
  return tree;
}

bool Digraph::set_edge(Vertex u, Vertex v, bool present) {
  check_vertex(n_, u);
  check_vertex(n_, v);
  if (u == v) throw std::invalid_argument("self-loops are not supported");
  std::uint8_t& cell = adj_[std::size_t{u} * n_ + v];
  const std::uint8_t want = present ? 1 : 0;
  if (cell == want) return false;
  cell = want;
  return true;
}

std::vector<Vertex> Digraph::out_neighbors(Vertex v) const {
  std::vector<Vertex> out;
  for (Vertex w = 0; w < n_; ++w)
    if (has_edge(v, w)) out.push_back(w);
  return out;
}

std::vector<Vertex> Digraph::in_neighbors(Vertex v) const {
  std::vector<Vertex> in;
  for (Vertex w = 0; w < n_; ++w)
    if (has_edge(w, v)) in.push_back(w);
  return in;
}

std::vector<std::pair<Vertex, Vertex>> Digraph::edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  for (Vertex u = 0; u < n_; ++u)
    for (Vertex v = 0; v < n_; ++v)
      if (has_edge(u, v)) out.emplace_back(u, v);
  return out;
}

std::size_t Digraph::edge_count() const { return static_cast<std::size_t>(std::count(adj_.begin(), adj_.end(), 1)); }

void Digraph::apply_patch(const VertexPatch& patch) {
  check_vertex(n_, patch.v);
  for (Vertex w = 0; w < n_; ++w) {
    adj_[std::size_t{patch.v} * n_ + w] = 0;
    adj_[std::size_t{w} * n_ + patch.v] = 0;
  }
  for (Vertex w : patch.out)
    if (w != patch.v) set_edge(patch.v, w, true);
  for (Vertex w : patch.in)
    if (w != patch.v) set_edge(w, patch.v, true);
}

VertexPatch Digraph::patch_of(Vertex v) const { return VertexPatch{v, out_neighbors(v), in_neighbors(v)}; }

Digraph Digraph::induced(std::span<const std::uint8_t> keep) const {
  Digraph g(n_);
  for (Vertex u = 0; u < n_; ++u) {
    if (!keep[u]) continue;
    for (Vertex v = 0; v < n_; ++v)
      if (keep[v] && has_edge(u, v)) g.adj_[std::size_t{u} * n_ + v] = 1;
  }
  return g;
}

}  // namespace dyngraph
