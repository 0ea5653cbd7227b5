#include <doctest.h>

#include <random>

#include "dyngraph/harness/oracles.hpp"
#include "dyngraph/hdist/hdist_oracle.hpp"
#include "support.hpp"

using namespace dyngraph;
using harness::oracle_bfs_h;

namespace {

HDistOracle make(std::size_t n, std::size_t h, RingMode mode = RingMode::kDeterministic, std::uint64_t seed = 0) {
  HDistConfig c;
  c.n = n;
  c.h = h;
  c.mode = mode;
  c.seed = seed;
  return HDistOracle(c);
}

void check_all(HDistOracle& o, const Digraph& g) {
  for (Vertex s = 0; s < g.num_vertices(); ++s) {
    const auto expect = oracle_bfs_h(g, s, static_cast<int>(o.hop_bound()));
    for (Vertex t = 0; t < g.num_vertices(); ++t) {
      o.y_insert(s, t);
      REQUIRE(o.query(s, t) == expect[t]);
    }
  }
}

}  // namespace

TEST_CASE("fresh oracle") {
  auto o = make(3, 2);
  o.y_insert(0, 0);
  CHECK(o.query(0, 0) == 0);
  CHECK(o.y_insert(0, 1) == kInfDist);
  CHECK_THROWS_AS(o.query(1, 2), std::out_of_range);
  const auto& p = o.ring().modulus();
  CHECK(p >= 9);
  CHECK(p <= 18);
  CHECK_THROWS_AS(make(3, 4), std::invalid_argument);
}

TEST_CASE("chain and deletion") {
  auto o = make(3, 2);
  o.y_insert(0, 2);
  o.edge_update(0, 1, true);
  o.edge_update(1, 2, true);
  CHECK(o.query(0, 2) == 2);
  o.edge_update(1, 2, false);
  CHECK(o.query(0, 2) == kInfDist);
  o.edge_update(1, 2, false);  // idempotent
  CHECK(o.query(0, 2) == kInfDist);
}

TEST_CASE("3-cycle") {
  for (std::size_t h : {1u, 3u}) {
    auto o = make(3, h);
    o.edge_update(0, 1, true);
    o.edge_update(1, 2, true);
    o.edge_update(2, 0, true);
    CHECK(o.y_insert(0, 0) == 0);
    CHECK(o.y_insert(0, 2) == (h == 3 ? 2 : kInfDist));
    if (h == 3) {
      CHECK(o.coefficient_nonzero(0, 0, 3));
      CHECK_FALSE(o.coefficient_nonzero(0, 0, 1));
    }
  }
}

TEST_CASE("random flips match truncated BFS") {
  std::mt19937_64 rng(21);
  for (RingMode mode : {RingMode::kDeterministic, RingMode::kRandomized}) {
    auto o = make(12, 3, mode, 5);
    Digraph g(12);
    for (Vertex s = 0; s < 12; ++s)
      for (Vertex t = 0; t < 12; t += 3) o.y_insert(s, t);
    std::uniform_int_distribution<Vertex> vd(0, 11);
    for (int step = 0; step < 50; ++step) {
      Vertex u = vd(rng), v = vd(rng);
      if (u == v) continue;
      const bool present = !g.has_edge(u, v);
      g.set_edge(u, v, present);
      o.edge_update(u, v, present);
      for (Vertex s = 0; s < 12; ++s) {
        const auto expect = oracle_bfs_h(g, s, 3);
        for (Vertex t = 0; t < 12; t += 3) REQUIRE(o.query(s, t) == expect[t]);
      }
    }
    check_all(o, g);
  }
}

TEST_CASE("vertex batches") {
  auto o = make(5, 3);
  Digraph g(5);
  for (Vertex u = 0; u < 5; ++u)
    for (Vertex v = 0; v < 5; ++v)
      if (u != v) {
        g.set_edge(u, v, true);
        o.edge_update(u, v, true);
      }
  for (Vertex s = 0; s < 5; ++s)
    for (Vertex t = 0; t < 5; ++t) o.y_insert(s, t);
  std::vector<VertexPatch> iso{{2, {}, {}}};
  o.vertex_batch_update(iso);
  g.apply_patch(iso[0]);
  check_all(o, g);

  const std::size_t before = o.y_size();
  o.vertex_batch_update(std::span<const VertexPatch>{});
  CHECK(o.y_size() == before);
  check_all(o, g);

  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const auto base = testing_support::random_digraph(9, 0.3, rng);
    auto a = make(9, 4), b = make(9, 4);
    for (auto [u, v] : base.edges()) {
      a.edge_update(u, v, true);
      b.edge_update(u, v, true);
    }
    std::uniform_int_distribution<Vertex> vd(0, 8);
    std::bernoulli_distribution coin(0.3);
    std::vector<VertexPatch> patches(2);
    for (auto& p : patches) {
      p.v = vd(rng);
      for (Vertex w = 0; w < 9; ++w) {
        if (coin(rng)) p.out.push_back(w);
        if (coin(rng)) p.in.push_back(w);
      }
    }
    a.vertex_batch_update(patches);
    b.vertex_batch_update(std::span(patches).subspan(0, 1));
    b.vertex_batch_update(std::span(patches).subspan(1, 1));
    auto g2 = base;
    for (const auto& p : patches) g2.apply_patch(p);
    CHECK(a.graph() == g2);
    for (Vertex s = 0; s < 9; ++s)
      for (Vertex t = 0; t < 9; ++t) {
        REQUIRE(a.pair_distance(s, t) == b.pair_distance(s, t));
        for (std::size_t k = 0; k <= 4; ++k) REQUIRE(a.coefficient_nonzero(s, t, k) == b.coefficient_nonzero(s, t, k));
      }
    check_all(a, g2);
  }
}

TEST_CASE("randomized mode on 500 instances") {
  std::mt19937_64 rng(99);
  std::size_t mismatches = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const auto g = testing_support::random_digraph(8, 0.25, rng);
    auto o = make(8, 3, RingMode::kRandomized, seed);
    for (auto [u, v] : g.edges()) o.edge_update(u, v, true);
    for (Vertex s = 0; s < 8; ++s) {
      const auto expect = oracle_bfs_h(g, s, 3);
      const auto got = o.source_distances(s);
      mismatches += got != expect;
    }
  }
  CHECK(mismatches == 0);
}

TEST_CASE("deterministic and randomized modes agree; big-prime path") {
  std::mt19937_64 rng(31);
  const auto g = testing_support::random_digraph(20, 0.12, rng);
  auto det = make(20, 20), rnd = make(20, 20, RingMode::kRandomized, 3);
  CHECK_FALSE(det.uses_word_arithmetic());
  CHECK(rnd.uses_word_arithmetic());
  for (auto [u, v] : g.edges()) {
    det.edge_update(u, v, true);
    rnd.edge_update(u, v, true);
  }
  for (Vertex s = 0; s < 20; ++s) {
    CHECK(det.source_distances(s) == oracle_bfs_h(g, s, 20));
    CHECK(rnd.source_distances(s) == det.source_distances(s));
  }
}
