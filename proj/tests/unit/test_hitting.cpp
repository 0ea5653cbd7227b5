#include <doctest.h>

#include <algorithm>
#include <random>

#include "dyngraph/harness/oracles.hpp"
#include "dyngraph/hitting/hitting.hpp"
#include "support.hpp"

using namespace dyngraph;

namespace {

// Size of a minimum hitting set by exhaustive search over subsets.
std::size_t minimum_hitting_size(std::size_t n, const std::vector<std::vector<Vertex>>& family) {
  std::size_t best = n;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<Vertex> set;
    for (Vertex v = 0; v < n; ++v)
      if (mask >> v & 1) set.push_back(v);
    if (set.size() < best && hits_all(family, set, n)) best = set.size();
  }
  return best;
}

// Checks partition invariants; returns false on any violation.
bool partition_ok(const Digraph& g, const BlockPartition& p, std::size_t d) {
  const std::size_t n = g.num_vertices();
  for (auto [u, v] : g.edges())
    if (p.block_of[u] > p.block_of[v]) return false;
  std::size_t covered = 0;
  for (std::size_t b = 0; b < p.count(); ++b) {
    covered += p.blocks[b].size();
    if (p.small[b] && p.blocks[b].size() > d) return false;
    if (!p.small[b] && (p.ranges[b].first != p.ranges[b].second || p.blocks[b].size() <= d)) return false;
    if (b + 1 < p.count() && p.blocks[b].size() + p.blocks[b + 1].size() <= d) return false;
  }
  return covered == n && p.count() <= std::max<std::size_t>(1, 2 * n / d);
}

}  // namespace

TEST_CASE("greedy examples") {
  const std::vector<std::vector<Vertex>> family{{1, 2, 3}, {3, 4, 5}, {5, 6, 1}};
  const auto r = greedy_hitting_set(7, family, 3);
  CHECK(hits_all(family, r, 7));
  CHECK(r.size() == minimum_hitting_size(7, family));
  CHECK(r == std::vector<Vertex>{1, 3});

  const std::vector<std::vector<Vertex>> single{{4, 2, 6}};
  CHECK(greedy_hitting_set(7, single, 3) == std::vector<Vertex>{2});
  CHECK(greedy_hitting_set(7, std::vector<std::vector<Vertex>>{}, 3).empty());
  CHECK_THROWS_AS(greedy_hitting_set(7, single, 4), std::invalid_argument);
  CHECK(greedy_size_bound(7, 3, 0) == 0);
}

TEST_CASE("random families: hit property and size bound") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 8 + trial % 9, k = 1 + trial % 5, m = 1 + trial % 40;
    std::vector<Vertex> ids(n);
    for (Vertex v = 0; v < n; ++v) ids[v] = v;
    std::vector<std::vector<Vertex>> family;
    for (std::size_t i = 0; i < m; ++i) {
      std::shuffle(ids.begin(), ids.end(), rng);
      const std::size_t size = k + rng() % (n - k + 1);
      family.emplace_back(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(size));
    }
    const auto r = greedy_hitting_set(n, family, k);
    REQUIRE(hits_all(family, r, n));
    REQUIRE(r.size() <= greedy_size_bound(n, k, m));
    if (n <= 12) CHECK(r.size() >= minimum_hitting_size(n, family));
  }
}

TEST_CASE("tree path hitting") {
  Digraph chain(6);
  for (Vertex v = 0; v + 1 < 6; ++v) chain.set_edge(v, v + 1, true);
  const std::vector<PathTree> one{bfs_tree(chain, 0, 3)};
  const auto h = tree_path_hitting(6, one, 3);
  CHECK(h.size() == 1);
  CHECK(h[0] >= 1);
  CHECK(h[0] <= 3);
  const std::vector<PathTree> shallow{bfs_tree(chain, 3, 4)};
  CHECK(tree_path_hitting(6, shallow, 4).empty());

  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 12;
    // Random DAG: edges only from lower to higher ids.
    Digraph g(n);
    std::bernoulli_distribution coin(0.3);
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v)
        if (coin(rng)) g.set_edge(u, v, true);
    const std::size_t depth = 1 + trial % 3;
    std::vector<PathTree> trees;
    for (Vertex s = 0; s < n; ++s) trees.push_back(bfs_tree(g, s, static_cast<int>(depth)));
    const auto hs = tree_path_hitting(n, trees, depth);
    std::vector<std::uint8_t> in(n, 0);
    for (Vertex v : hs) in[v] = 1;
    for (const auto& t : trees)
      for (Vertex leaf = 0; leaf < n; ++leaf) {
        if (t.dist[leaf] != static_cast<Dist>(depth)) continue;
        bool hit = false;
        for (Vertex x = leaf; x != t.root; x = t.pred[x]) hit = hit || in[x];
        REQUIRE(hit);
      }
  }
}

TEST_CASE("block partition rules") {
  Digraph cycle(12);
  for (Vertex v = 0; v < 12; ++v) cycle.set_edge(v, (v + 1) % 12, true);
  auto w = weak_hitting_set(cycle, 12, 6);
  CHECK(w.partition.count() == 1);
  CHECK_FALSE(w.partition.small[0]);
  CHECK(w.ell == 1);
  CHECK(partition_ok(cycle, w.partition, 6));
  // ell = 1: every out-neighbour within the block is a depth-1 path.
  CHECK(w.hitting.size() == 12);

  Digraph dag(8);
  for (Vertex v = 0; v + 1 < 8; ++v) dag.set_edge(v, v + 1, true);
  w = weak_hitting_set(dag, 8, 8);
  CHECK(w.partition.count() == 1);
  CHECK(w.partition.small[0]);

  CHECK_THROWS_AS(weak_hitting_set(dag, 5, 8), std::invalid_argument);
}

TEST_CASE("weak hitting set certificates on random graphs") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 12 + trial % 13;
    const auto g = testing_support::random_digraph(n, trial % 2 ? 0.08 : 0.15, rng);
    const std::size_t d = n / (1 + trial % 2);
    const std::size_t h = std::min(n, (6 * n + d - 1) / d + trial % 3);
    const auto w = weak_hitting_set(g, h, d);
    REQUIRE(partition_ok(g, w.partition, d));
    const double exact = double(d) * double(h) / (6.0 * double(n));
    CHECK(double(w.ell) >= exact - 1);
    CHECK(double(h) / (2.0 * double(n) / double(d) + 1) - 1 >= exact);
    CHECK(exact >= double(w.ell));
    const auto dist = harness::oracle_apsp(g);
    for (Vertex s = 0; s < n; ++s)
      for (Vertex t = 0; t < n; ++t) {
        if (dist[s][t] == kInfDist || dist[s][t] <= static_cast<Dist>(h)) continue;
        REQUIRE(weak_certificate(dist, w.hitting, s, t, h) != kNoVertex);
      }
  }
}
