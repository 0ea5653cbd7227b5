#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "dyngraph/algebra/fields.hpp"
#include "dyngraph/algebra/poly_matrix.hpp"
#include "dyngraph/graph/digraph.hpp"
#include "dyngraph/graph/types.hpp"
#include "dyngraph/harness/oracles.hpp"

namespace testing_support {

using dyngraph::Digraph;
using dyngraph::Vertex;

inline Digraph random_digraph(std::size_t n, double density, std::mt19937_64& rng) {
  Digraph g(n);
  std::bernoulli_distribution coin(density);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      if (u != v && coin(rng)) g.set_edge(u, v, true);
  return g;
}

template <class F>
dyngraph::algebra::PolyMatrix<F> random_matrix(const F& f, std::size_t rows, std::size_t cols, std::size_t h,
                                               std::mt19937_64& rng) {
  dyngraph::algebra::PolyMatrix<F> m(rows, cols, h);
  std::uniform_int_distribution<std::uint64_t> dist(0, 1000000);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      for (std::size_t k = 0; k <= h; ++k) m.at(i, j)[k] = f.from_uint(dist(rng));
  return m;
}

// M = I - X A as a polynomial matrix.
template <class F>
dyngraph::algebra::PolyMatrix<F> path_counting_matrix(const dyngraph::algebra::PolyRing<F>& ring, const Digraph& g) {
  auto m = dyngraph::algebra::PolyMatrix<F>::identity(ring, g.num_vertices());
  if (ring.degree_bound() == 0) return m;
  for (Vertex u = 0; u < g.num_vertices(); ++u)
    for (Vertex v = 0; v < g.num_vertices(); ++v)
      if (g.has_edge(u, v)) m.at(u, v)[1] = ring.field().neg(ring.field().one());
  return m;
}

// Every reachable vertex has a tree edge from a vertex one hop closer and the
// distances equal truncated BFS (h < 0: unbounded).
inline bool tree_matches_bfs(const Digraph& g, const dyngraph::PathTree& tree, int h) {
  const auto expect = dyngraph::harness::oracle_bfs_h(g, tree.root, h);
  if (tree.dist != expect) return false;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (v == tree.root || expect[v] == dyngraph::kInfDist) {
      if (tree.pred[v] != dyngraph::kNoVertex) return false;
      continue;
    }
    const Vertex p = tree.pred[v];
    if (p == dyngraph::kNoVertex || !g.has_edge(p, v) || expect[p] + 1 != expect[v]) return false;
    const auto path = tree.path_to(v);
    if (path.size() != static_cast<std::size_t>(expect[v]) + 1 ||
        !dyngraph::harness::is_valid_path(g, path, tree.root, v))
      return false;
  }
  return true;
}

}  // namespace testing_support
