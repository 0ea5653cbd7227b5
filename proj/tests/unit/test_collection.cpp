#include <doctest.h>

#include <random>

#include "dyngraph/collection/build.hpp"
#include "dyngraph/harness/oracles.hpp"
#include "support.hpp"

using namespace dyngraph;
using harness::oracle_bfs_h;

namespace {

SwitchReporter reporter(const Digraph& g, std::size_t h) {
  ReporterConfig c;
  c.n = g.num_vertices();
  c.h = h;
  return SwitchReporter(c, g);
}

Digraph without(const Digraph& g, const PathCollection& pc) {
  std::vector<std::uint8_t> keep(g.num_vertices(), 1);
  for (Vertex v : pc.congested()) keep[v] = 0;
  return g.induced(keep);
}

// All pairwise distances of W-restricted probes, for restoration checks.
std::vector<Dist> probe(const SwitchReporter& r) {
  std::vector<Dist> out;
  for (Vertex s = 0; s < r.num_vertices(); ++s)
    for (Vertex t = 0; t < r.num_vertices(); ++t) out.push_back(r.distance(s, t));
  return out;
}

}  // namespace

TEST_CASE("empty graph and tau = n") {
  auto empty = reporter(Digraph(5), 2);
  auto pc = build_collection_threshold(empty, 2.0);
  CHECK(pc.size() == 0);
  CHECK(pc.congested().empty());

  std::mt19937_64 rng(1);
  const auto g = testing_support::random_digraph(10, 0.25, rng);
  auto r = reporter(g, 3);
  pc = build_collection_threshold(r, 10.0);
  CHECK(pc.congested().empty());
  for (Vertex s = 0; s < 10; ++s) {
    const auto d = oracle_bfs_h(g, s, 3);
    for (Vertex t = 0; t < 10; ++t) {
      const StoredPath* p = pc.find(s, t);
      if (s == t || d[t] == kInfDist) {
        CHECK(p == nullptr);
        continue;
      }
      REQUIRE(p != nullptr);
      CHECK(p->length() == static_cast<std::size_t>(d[t]));
      CHECK(harness::is_valid_path(g, p->vertices, s, t));
    }
  }
}

TEST_CASE("threshold build properties on random graphs") {
  std::mt19937_64 rng(2);
  std::size_t nonempty_c = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 8 + trial % 17, h = 1 + trial % 4;
    const double tau = std::vector<double>{1, 2, 4}[trial % 3];
    // Hub-heavy graphs so that some vertices do get congested.
    auto g = testing_support::random_digraph(n, 0.12, rng);
    for (Vertex v = 1; v < n; ++v) {
      g.set_edge(v, 0, true);
      g.set_edge(0, v, true);
    }
    auto r = reporter(g, h);
    const auto before = probe(r);
    const auto pc = build_collection_threshold(r, tau);
    CHECK(probe(r) == before);
    CHECK(r.switched_on_count() == n);
    CHECK(double(pc.max_congestion()) <= congestion_cap(n, h, tau));
    CHECK(double(pc.congested().size()) <= 2.0 * double(n) / tau);
    nonempty_c += !pc.congested().empty();
    const auto residual = without(g, pc);
    for (Vertex s = 0; s < n; ++s) {
      if (pc.is_congested(s)) continue;
      const auto d = oracle_bfs_h(residual, s, static_cast<int>(h));
      for (Vertex t = 0; t < n; ++t) {
        if (s == t || pc.is_congested(t) || d[t] == kInfDist) continue;
        const StoredPath* p = pc.find(s, t);
        REQUIRE(p != nullptr);
        CHECK(p->length() <= static_cast<std::size_t>(d[t]));
        CHECK(harness::is_valid_path(g, p->vertices, s, t));
      }
    }
  }
  CHECK(nonempty_c > 0);
}

TEST_CASE("randomized build") {
  std::mt19937_64 rng(3);
  const auto g = testing_support::random_digraph(12, 0.2, rng);
  auto r = reporter(g, 3);
  auto pc = build_collection_randomized(r, std::vector<Vertex>{});
  CHECK(pc.size() == 0);
  CHECK(pc.congested().empty());

  const std::vector<Vertex> one{5};
  pc = build_collection_randomized(r, one);
  REQUIRE(pc.congested().size() == 2);
  CHECK(pc.congested()[0] == 5);
  // c_2 is the most congested vertex after the tree of 5, ties to smallest id.
  const auto tree = bfs_tree(g, 5, 3);
  Vertex expect = kNoVertex;
  std::vector<std::uint64_t> alpha(12, 0);
  for (Vertex t = 0; t < 12; ++t)
    if (t != 5 && tree.reachable(t))
      for (Vertex v : tree.path_to(t)) ++alpha[v];
  for (Vertex v = 0; v < 12; ++v)
    if (v != 5 && (expect == kNoVertex || alpha[v] > alpha[expect])) expect = v;
  CHECK(pc.congested()[1] == expect);
  CHECK(r.switched_on_count() == 12);

  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 10 + trial % 10, h = 1 + trial % 4;
    const auto gg = testing_support::random_digraph(n, 0.2, rng);
    auto rr = reporter(gg, h);
    std::vector<Vertex> c0;
    for (Vertex v = 0; v < n; ++v)
      if (rng() % 4 == 0) c0.push_back(v);
    const auto res = build_collection_randomized(rr, c0);
    CHECK(res.congested().size() == std::min(2 * c0.size(), n));
    for (Vertex v : c0) CHECK(res.is_congested(v));
    CHECK(double(res.max_congestion()) <= randomized_congestion_bound(n, h));
    std::vector<std::uint8_t> keep(n, 1);
    for (Vertex c : res.congested()) {
      // Residual graph G_i, plus the target itself when it was picked earlier.
      for (Vertex t = 0; t < n; ++t) {
        if (t == c) continue;
        auto with_t = keep;
        with_t[t] = 1;
        const auto residual = gg.induced(with_t);
        const auto d = oracle_bfs_h(residual, c, static_cast<int>(h));
        const StoredPath* p = res.find(c, t);
        REQUIRE((p != nullptr) == (d[t] != kInfDist));
        if (p) {
          CHECK(p->length() == static_cast<std::size_t>(d[t]));
          CHECK(harness::is_valid_path(residual, p->vertices, c, t));
        }
      }
      keep[c] = 0;
    }
  }
}

TEST_CASE("mark affected") {
  PathCollection pc(6);
  pc.add({0, 1, 2});
  pc.add({0, 3});
  const auto id = pc.add({4, 2, 5});
  pc.set_representative(id, 2);
  CHECK(pc.mark_affected(1).size() == 1);
  CHECK(pc.mark_affected(1).empty());
  const auto hit = pc.mark_affected(pc.paths()[id].beta);
  REQUIRE(hit.size() == 1);
  CHECK(hit[0] == std::pair<Vertex, Vertex>{4, 5});
  CHECK(pc.mark_affected(0).size() == 1);
  CHECK(pc.affected_count() == 3);
  CHECK_THROWS_AS(pc.add({0, 3}), std::invalid_argument);
  CHECK_THROWS_AS(pc.add({1, 2, 1}), std::invalid_argument);

  // Affected totals never exceed the summed congestion of the marked vertices.
  std::mt19937_64 rng(4);
  const auto g = testing_support::random_digraph(14, 0.2, rng);
  auto r = reporter(g, 3);
  auto full = build_collection_threshold(r, 2.0);
  std::size_t total = 0;
  std::uint64_t budget = 0;
  for (Vertex v : {3u, 7u, 3u, 11u}) {
    budget += full.congestion(v);
    const auto newly = full.mark_affected(v);
    total += newly.size();
    for (auto [s, t] : newly) {
      const auto& verts = full.find(s, t)->vertices;
      CHECK(std::find(verts.begin(), verts.end(), v) != verts.end());
    }
  }
  CHECK(total <= budget);
  CHECK(total == full.affected_count());
}
