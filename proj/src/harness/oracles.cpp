#include "dyngraph/harness/oracles.hpp"

#include <deque>
#include <functional>

namespace dyngraph::harness {

std::vector<Dist> oracle_bfs_h(const Digraph& g, Vertex s, int h) {
  const std::size_t n = g.num_vertices();
  std::vector<Dist> dist(n, kInfDist);
  dist[s] = 0;
  std::deque<Vertex> queue{s};
  while (!queue.empty()) {
    const Vertex u = queue.front();
    queue.pop_front();
    if (h >= 0 && dist[u] >= h) continue;
    for (Vertex v = 0; v < n; ++v) {
      if (dist[v] != kInfDist || !g.has_edge(u, v)) continue;
      dist[v] = dist[u] + 1;
      queue.push_back(v);
    }
  }
  return dist;
}

std::vector<std::vector<Dist>> oracle_apsp(const Digraph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<std::vector<Dist>> d(n, std::vector<Dist>(n, kInfDist));
  for (Vertex u = 0; u < n; ++u) {
    d[u][u] = 0;
    for (Vertex v = 0; v < n; ++v)
      if (g.has_edge(u, v)) d[u][v] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      if (d[i][k] == kInfDist) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (d[k][j] != kInfDist && d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
    }
  return d;
}

std::vector<std::vector<bool>> oracle_reachability(const Digraph& g) {
  const auto d = oracle_apsp(g);
  std::vector<std::vector<bool>> r(d.size(), std::vector<bool>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = 0; j < d.size(); ++j) r[i][j] = d[i][j] != kInfDist;
  return r;
}

std::vector<mpz_class> oracle_walk_counts(const Digraph& g, Vertex s, Vertex t, int h) {
  const std::size_t n = g.num_vertices();
  // Row vector e_s A^k, advanced one hop at a time.
  std::vector<mpz_class> row(n, 0), next(n);
  row[s] = 1;
  std::vector<mpz_class> out;
  out.push_back(row[t]);
  for (int k = 1; k <= h; ++k) {
    for (auto& x : next) x = 0;
    for (Vertex u = 0; u < n; ++u) {
      if (row[u] == 0) continue;
      for (Vertex v = 0; v < n; ++v)
        if (g.has_edge(u, v)) next[v] += row[u];
    }
    row.swap(next);
    out.push_back(row[t]);
  }
  return out;
}

std::vector<mpz_class> oracle_walk_enumeration(const Digraph& g, Vertex s, Vertex t, int h) {
  std::vector<mpz_class> out(h + 1, 0);
  std::function<void(Vertex, int)> walk = [&](Vertex u, int len) {
    if (u == t) out[len] += 1;
    if (len == h) return;
    for (Vertex v = 0; v < g.num_vertices(); ++v)
      if (g.has_edge(u, v)) walk(v, len + 1);
  };
  walk(s, 0);
  return out;
}

bool is_valid_path(const Digraph& g, const std::vector<Vertex>& path, Vertex s, Vertex t) {
  if (path.empty() || path.front() != s || path.back() != t) return false;
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    if (path[i] >= g.num_vertices() || path[i + 1] >= g.num_vertices() || !g.has_edge(path[i], path[i + 1]))
      return false;
  return true;
}

}  // namespace dyngraph::harness
