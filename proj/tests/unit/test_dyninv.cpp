#include <doctest.h>

#include "dyninv_trace.hpp"
#include "dyngraph/algebra/ring.hpp"
#include "dyngraph/dyninv/dyn_inverse.hpp"
#include "support.hpp"

using namespace dyngraph::algebra;
using dyngraph::dyninv::DynInverse;

TEST_CASE("init") {
  PolyRing<WordField> ring(WordField(101), 3);
  DynInverse<WordField> id(ring, PolyMatrix<WordField>::identity(ring, 4), 4);
  CHECK(id.materialize() == PolyMatrix<WordField>::identity(ring, 4));
  CHECK(id.cap() == 4);
  CHECK(id.updates_since_reset() == 0);
  CHECK(id.y_size() == 0);

  dyngraph::Digraph cycle(3);
  cycle.set_edge(0, 1, true);
  cycle.set_edge(1, 2, true);
  cycle.set_edge(2, 0, true);
  DynInverse<WordField> inv(ring, testing_support::path_counting_matrix(ring, cycle), 2);
  CHECK(ring.to_uints(inv.y_insert(0, 0)) == std::vector<std::uint64_t>{1, 0, 0, 1});

  PolyMatrix<WordField> singular(2, 2, 3);
  CHECK_THROWS_AS(DynInverse<WordField>(ring, singular, 2), SingularError);
}

TEST_CASE("entry update examples") {
  PolyRing<WordField> scalar(WordField(101), 0);
  DynInverse<WordField> inv(scalar, PolyMatrix<WordField>::identity(scalar, 2), 4);
  inv.y_insert(0, 1);
  inv.entry_update(0, 1, scalar.from_ints({7}));
  CHECK(scalar.to_uints(inv.y_value(0, 1)) == std::vector<std::uint64_t>{101 - 7});

  PolyRing<WordField> ring(WordField(101), 2);
  DynInverse<WordField> g(ring, PolyMatrix<WordField>::identity(ring, 3), 2);
  g.y_insert(0, 1);
  g.entry_update(0, 1, ring.from_ints({0, -1}));
  CHECK(ring.to_uints(g.y_value(0, 1)) == std::vector<std::uint64_t>{0, 1, 0});
}

TEST_CASE("cap consecutive updates fold into N") {
  std::mt19937_64 rng(1);
  PolyRing<WordField> ring(WordField(1000003), 3);
  const auto graph = testing_support::random_digraph(8, 0.3, rng);
  DynInverse<WordField> inv(ring, PolyMatrix<WordField>::identity(ring, 8), 4);
  dyngraph::Digraph current(8);
  std::size_t updates = 0;
  for (auto [u, v] : graph.edges()) {
    inv.entry_update(u, v, ring.from_ints({0, -1}));
    current.set_edge(u, v, true);
    ++updates;
    CHECK(inv.low_rank_columns() == updates % 4);
    CHECK(inv.materialize() == mat_inverse(ring, testing_support::path_counting_matrix(ring, current)));
  }
  CHECK(inv.resets() == updates / 4);
}

TEST_CASE("batch update") {
  std::mt19937_64 rng(2);
  PolyRing<WordField> ring(WordField(1000003), 3);
  DynInverse<WordField> inv(ring, PolyMatrix<WordField>::identity(ring, 5), 3);
  inv.y_insert(1, 2);
  const auto before = inv.materialize();
  inv.batch_update(PolyMatrix<WordField>(5, 2, 3), PolyMatrix<WordField>(5, 2, 3));
  CHECK(inv.materialize() == before);

  // Rank-1 batch versus entry update.
  DynInverse<WordField> a(ring, PolyMatrix<WordField>::identity(ring, 5), 3), b = a;
  const auto delta = ring.from_ints({0, -1, 4});
  a.entry_update(2, 4, delta);
  PolyMatrix<WordField> u(5, 1, 3), v(5, 1, 3);
  u.set(2, 0, delta);
  v.set(4, 0, ring.one());
  b.batch_update(u, v);
  CHECK(a.materialize() == b.materialize());

  // Deleting all edges of one vertex.
  const auto g = testing_support::random_digraph(7, 0.5, rng);
  DynInverse<WordField> c(ring, testing_support::path_counting_matrix(ring, g), 3);
  PolyMatrix<WordField> uu(7, 2, 3), vv(7, 2, 3);
  uu.set(3, 0, ring.one());
  for (dyngraph::Vertex w = 0; w < 7; ++w) {
    if (g.has_edge(3, w)) vv.set(w, 0, ring.from_ints({0, 1}));
    if (g.has_edge(w, 3)) uu.set(w, 1, ring.from_ints({0, 1}));
  }
  vv.set(3, 1, ring.one());
  c.y_insert(0, 3);
  c.batch_update(uu, vv);
  auto h = g;
  h.apply_patch({3, {}, {}});
  const auto direct = mat_inverse(ring, testing_support::path_counting_matrix(ring, h));
  CHECK(c.materialize() == direct);
  CHECK(c.y_value(0, 3) == direct.get(0, 3));
}

TEST_CASE("Y insert and remove") {
  PolyRing<WordField> ring(WordField(1000003), 2);
  DynInverse<WordField> inv(ring, PolyMatrix<WordField>::identity(ring, 4), 2);
  CHECK(inv.y_insert(2, 2) == ring.one());
  inv.entry_update(0, 1, ring.from_ints({0, -1}));
  inv.entry_update(1, 2, ring.from_ints({0, -1}));
  inv.entry_update(2, 3, ring.from_ints({0, -1}));
  CHECK(ring.to_uints(inv.y_insert(0, 2)) == std::vector<std::uint64_t>{0, 0, 1});
  const std::size_t size = inv.y_size();
  inv.y_insert(0, 2);
  CHECK(inv.y_size() == size);
  inv.y_remove(0, 2);
  CHECK_FALSE(inv.y_contains(0, 2));
  CHECK_THROWS_AS(inv.y_value(0, 2), std::out_of_range);
  inv.y_remove(3, 3);
  CHECK(inv.y_size() == size - 1);
  inv.entry_update(1, 3, ring.from_ints({0, -1}));
  CHECK(ring.to_uints(inv.y_insert(0, 2)) == std::vector<std::uint64_t>{0, 0, 1});
  CHECK(ring.to_uints(inv.y_insert(0, 3)) == std::vector<std::uint64_t>{0, 0, 1});
}

TEST_CASE("random interleavings match direct inversion") {
  PolyRing<WordField> scalar(WordField(1000000007), 0);
  PolyRing<WordField> poly(WordField(1000000007), 3);
  PolyRing<BigField> big(BigField(ring_deterministic(16, 3).modulus()), 3);
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto a = testing_support::run_interleaving(scalar, 10, 3, 40, seed);
    CHECK(a.mismatches == 0);
    CHECK(a.checks > 0);
    CHECK(a.max_columns < 3);
    const auto b = testing_support::run_interleaving(poly, 10, 1 + seed % 4, 40, seed);
    CHECK(b.mismatches == 0);
    CHECK(b.singular_skips == 0);
    const auto c = testing_support::run_interleaving(big, 8, 2, 20, seed);
    CHECK(c.mismatches == 0);
  }
}

TEST_CASE("reset transparency: cap = 1 and cap = n agree") {
  std::mt19937_64 rng(4);
  PolyRing<WordField> ring(WordField(1000003), 4);
  const std::size_t n = 9;
  DynInverse<WordField> one(ring, PolyMatrix<WordField>::identity(ring, n), 1);
  DynInverse<WordField> full(ring, PolyMatrix<WordField>::identity(ring, n), n);
  for (std::size_t s = 0; s < n; ++s) {
    one.y_insert(s, (s * 3) % n);
    full.y_insert(s, (s * 3) % n);
  }
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  for (int step = 0; step < 60; ++step) {
    const std::size_t i = idx(rng), j = idx(rng);
    const auto delta = ring.from_ints({0, step % 2 ? -1 : 1, 3});
    one.entry_update(i, j, delta);
    full.entry_update(i, j, delta);
    CHECK(one.low_rank_columns() == 0);
    CHECK(full.low_rank_columns() < n);
    for (std::size_t s = 0; s < n; ++s) REQUIRE(one.y_value(s, (s * 3) % n) == full.y_value(s, (s * 3) % n));
  }
  CHECK(one.materialize() == full.materialize());
}
