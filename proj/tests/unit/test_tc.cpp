#include <doctest.h>

#include <random>
#include <vector>

#include "dyngraph/harness/oracles.hpp"
#include "dyngraph/tc/dynamic_tc.hpp"
#include "support.hpp"

using namespace dyngraph;
using dyngraph::tc::BoolMatrix;
using dyngraph::tc::DynamicTc;
using dyngraph::tc::TcParams;

namespace {

VertexPatch random_patch(std::size_t n, double density, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(density);
  VertexPatch p;
  p.v = static_cast<Vertex>(rng() % n);
  for (Vertex w = 0; w < n; ++w) {
    if (w == p.v) continue;
    if (coin(rng)) p.out.push_back(w);
    if (coin(rng)) p.in.push_back(w);
  }
  return p;
}

BoolMatrix naive_product(const BoolMatrix& a, const BoolMatrix& b) {
  BoolMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      for (std::size_t k = 0; k < a.cols(); ++k)
        if (a.get(i, k) && b.get(k, j)) c.set(i, j);
  return c;
}

BoolMatrix random_bool(std::size_t r, std::size_t c, double density, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(density);
  BoolMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (coin(rng)) m.set(i, j);
  return m;
}

void check_closure(const DynamicTc& st) {
  const auto want = harness::oracle_reachability(st.graph());
  const std::size_t n = st.num_vertices();
  for (Vertex s = 0; s < n; ++s)
    for (Vertex t = 0; t < n; ++t) REQUIRE(st.reachable(s, t) == want[s][t]);
}

void check_paths(DynamicTc& st) {
  const std::size_t n = st.num_vertices();
  for (Vertex s = 0; s < n; ++s)
    for (Vertex t = 0; t < n; ++t) {
      if (!st.reachable(s, t)) {
        CHECK_THROWS_AS(st.report_path(s, t), std::invalid_argument);
        continue;
      }
      const auto path = st.report_path(s, t);
      REQUIRE(harness::is_valid_path(st.graph(), path, s, t));
      REQUIRE(st.diagnostics().last_report_probes <= 2 * n);
    }
}

// Sparse graph made of a shuffled Hamiltonian-ish chain plus a few chords,
// so reachability needs paths longer than h.
Digraph long_paths(std::size_t n, std::mt19937_64& rng) {
  std::vector<Vertex> order(n);
  for (Vertex v = 0; v < n; ++v) order[v] = v;
  std::shuffle(order.begin(), order.end(), rng);
  Digraph g(n);
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (rng() % 8 != 0) g.set_edge(order[i], order[i + 1], true);
  for (int k = 0; k < 3; ++k) {
    const Vertex a = static_cast<Vertex>(rng() % n), b = static_cast<Vertex>(rng() % n);
    if (a != b) g.set_edge(a, b, true);
  }
  return g;
}

void load(DynamicTc& st, const Digraph& g) {
  std::vector<VertexPatch> batch;
  for (Vertex v = 0; v < st.num_vertices(); ++v) batch.push_back(g.patch_of(v));
  st.vertex_update(batch);
}

}  // namespace

TEST_CASE("boolean products") {
  std::mt19937_64 rng(1);
  for (auto [r, k, c] : {std::tuple{1, 1, 1}, {5, 70, 3}, {64, 64, 64}, {100, 130, 65}}) {
    const auto a = random_bool(r, k, 0.1, rng);
    const auto b = random_bool(k, c, 0.1, rng);
    const auto want = naive_product(a, b);
    CHECK(tc::serial::multiply(a, b) == want);
    CHECK(tc::parallel::multiply(a, b) == want);
  }
  CHECK_THROWS_AS(tc::serial::multiply(BoolMatrix(2, 3), BoolMatrix(2, 3)), std::invalid_argument);
  BoolMatrix x(2, 2), y(2, 2);
  x.set(0, 1);
  y.set(0, 1);
  y.set(1, 0);
  CHECK(x.contained_in(y));
  CHECK_FALSE(y.contained_in(x));
}

TEST_CASE("parameters") {
  const auto p = tc::resolve_tc_params(32, {});
  CHECK(p.d == 16);
  CHECK(p.h == 24);
  CHECK(tc::resolve_tc_params(12, {}).h == 12);
  CHECK(tc::resolve_tc_params(1, {}).h == 1);
  CHECK_THROWS_AS(tc::resolve_tc_params(20, {.d = 2, .h = 5}), std::invalid_argument);
  CHECK_THROWS_AS(tc::resolve_tc_params(20, {.d = 21}), std::invalid_argument);
  CHECK_THROWS_AS(tc::resolve_tc_params(0, {}), std::invalid_argument);
  // h >= n - 1 needs no hitting set.
  CHECK(tc::resolve_tc_params(10, {.d = 1, .h = 9}).h == 9);
  DynamicTc st(10, {.d = 1, .h = 9});
  CHECK(st.weak_hitting().hitting.empty());
}

TEST_CASE("closure matches reachability on random traces") {
  std::mt19937_64 rng(2);
  for (RingMode mode : {RingMode::kDeterministic, RingMode::kRandomized}) {
    for (int trial = 0; trial < 4; ++trial) {
      const std::size_t n = 14 + 2 * trial;
      // dh = 6n exactly, so ell = 1 and the hitting set is nontrivial.
      DynamicTc st(n, {.d = n, .h = 6, .mode = mode, .seed = std::uint64_t(trial)});
      check_closure(st);
      load(st, long_paths(n, rng));
      check_closure(st);
      CHECK(!st.weak_hitting().hitting.empty());
      for (int r = 0; r < 6; ++r) {
        std::vector<VertexPatch> batch;
        const int k = 1 + static_cast<int>(rng() % 3);
        for (int i = 0; i < k; ++i) batch.push_back(random_patch(n, 0.08, rng));
        st.vertex_update(batch);
        check_closure(st);
      }
      CHECK(st.diagnostics().rounds == 7);
    }
  }
}

TEST_CASE("default parameters") {
  std::mt19937_64 rng(3);
  for (std::size_t n : {6, 25, 30}) {
    DynamicTc st(n);
    load(st, long_paths(n, rng));
    check_closure(st);
    for (int r = 0; r < 3; ++r) {
      const VertexPatch p = random_patch(n, 0.1, rng);
      st.vertex_update(std::span(&p, 1));
      check_closure(st);
    }
  }
}

TEST_CASE("base matrix and certificates") {
  std::mt19937_64 rng(4);
  const std::size_t n = 18, h = 6;
  DynamicTc st(n, {.d = n, .h = h});
  load(st, long_paths(n, rng));
  const auto dist = harness::oracle_apsp(st.graph());
  const auto& hs = st.weak_hitting().hitting;
  for (Vertex s = 0; s < n; ++s)
    for (Vertex t = 0; t < n; ++t) {
      REQUIRE(st.base_matrix().get(s, t) == (dist[s][t] <= h));
      // Far pairs have a hitting vertex near s that still reaches t.
      if (dist[s][t] != kInfDist && dist[s][t] > h) CHECK(weak_certificate(dist, hs, s, t, h) != kNoVertex);
    }
}

TEST_CASE("squaring chain") {
  std::mt19937_64 rng(5);
  const std::size_t n = 20;
  DynamicTc st(n, {.d = n, .h = 6});
  load(st, long_paths(n, rng));
  const auto& d = st.diagnostics();
  CHECK(d.monotone_chain);
  CHECK(d.squarings == 5);
  if (d.hitting_size > 1) CHECK(d.fixed_point_at >= 1);
  CHECK(d.fixed_point_at <= d.squarings);
}

TEST_CASE("h = n and edge removal") {
  std::mt19937_64 rng(6);
  const std::size_t n = 12;
  DynamicTc st(n, {.h = n});
  load(st, testing_support::random_digraph(n, 0.2, rng));
  check_closure(st);
  CHECK(st.base_matrix() == st.closure());
  // Isolate every vertex: the closure drops to the identity.
  std::vector<VertexPatch> batch;
  for (Vertex v = 0; v < n; ++v) batch.push_back(VertexPatch{v, {}, {}});
  st.vertex_update(batch);
  for (Vertex s = 0; s < n; ++s)
    for (Vertex t = 0; t < n; ++t) CHECK(st.reachable(s, t) == (s == t));
  CHECK_THROWS_AS(st.vertex_update({}), std::invalid_argument);
}

TEST_CASE("reported paths") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    const std::size_t n = 10 + 3 * trial;
    DynamicTc st(n, {.d = n, .h = 6, .parallel = trial % 2 == 0});
    load(st, trial % 2 ? long_paths(n, rng) : testing_support::random_digraph(n, 0.12, rng));
    check_paths(st);
    const VertexPatch p = random_patch(n, 0.15, rng);
    st.vertex_update(std::span(&p, 1));
    check_paths(st);
  }
  // Two cycles joined by one edge.
  DynamicTc st(6, {.h = 6});
  Digraph g(6);
  for (auto [u, v] : {std::pair{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {2, 4}})
    g.set_edge(Vertex(u), Vertex(v), true);
  load(st, g);
  const auto path = st.report_path(1, 3);
  CHECK(harness::is_valid_path(st.graph(), path, 1, 3));
  CHECK(path == std::vector<Vertex>{1, 2, 4, 5, 3});
  CHECK_FALSE(st.reachable(3, 0));
}
