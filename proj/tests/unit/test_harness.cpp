#include <doctest.h>

#include <random>

#include "dyngraph/harness/generator.hpp"
#include "dyngraph/harness/oracles.hpp"
#include "dyngraph/harness/runner.hpp"
#include "dyngraph/harness/trace.hpp"
#include "support.hpp"

using namespace dyngraph;
using namespace dyngraph::harness;

namespace {

const char* kCrafted = R"(# path 0 -> 1 -> 2 -> 3, then 1 -> 2 removed
n 4
structure sssp
e 0 1 +
e 1 2 +
e 2 3 +
qs 0
qd 0 3
qp 0 3
e 1 2 -
qd 0 3
qp 0 3
)";

// Alpha by listing every tree path explicitly.
std::vector<std::uint64_t> alpha_by_listing(const Digraph& g, std::size_t h) {
  const std::size_t n = g.num_vertices();
  std::vector<std::uint64_t> alpha(n, 0);
  for (Vertex s = 0; s < n; ++s) {
    const PathTree tree = bfs_tree(g, s, static_cast<int>(h));
    for (Vertex t = 0; t < n; ++t) {
      if (t == s || !tree.reachable(t)) continue;
      for (Vertex v : tree.path_to(t)) ++alpha[v];
    }
  }
  return alpha;
}

}  // namespace

TEST_CASE("trace round trip") {
  const Trace t = parse_trace_string(
      "n 5\nstructure apsp\nmode rand\nseed 9\nparams eps=0.1,h=2\n"
      "e 0 1 +   # comment\n\nbb\nvp 2 | out: 0 1 | in: 4\nvp 3 | out: | in:\nbe\n"
      "qs 1\nqd 1 2\nqp 2 0\nqtc\nqtr\nqtr 3\n");
  CHECK(t.n == 5);
  CHECK(t.structure == "apsp");
  CHECK(t.mode == "rand");
  CHECK(t.has_seed);
  CHECK(t.seed == 9);
  CHECK(t.params == "eps=0.1,h=2");
  REQUIRE(t.events.size() == 11);
  CHECK(t.update_count() == 3);
  CHECK(t.query_count() == 6);
  CHECK(t.events[0].line == 6);
  CHECK(t.events[2].patch.out == std::vector<Vertex>{0, 1});
  CHECK(t.events[2].patch.in == std::vector<Vertex>{4});
  CHECK(t.events[3].patch.out.empty());
  CHECK(t.events[9].u == kNoVertex);
  CHECK(t.events[10].u == 3);
  const std::string text = trace_to_string(t);
  const Trace back = parse_trace_string(text);
  CHECK(trace_to_string(back) == text);
}

TEST_CASE("trace errors") {
  CHECK_THROWS_AS(parse_trace_string("e 0 1 +\n"), TraceError);
  CHECK_THROWS_AS(parse_trace_string(""), TraceError);
  CHECK_THROWS_AS(parse_trace_string("n 3\ne 0 3 +\n"), TraceError);
  CHECK_THROWS_AS(parse_trace_string("n 3\ne 0 0 +\n"), TraceError);
  CHECK_THROWS_AS(parse_trace_string("n 3\ne 0 1 *\n"), TraceError);
  CHECK_THROWS_AS(parse_trace_string("n 3\nbb\nbb\n"), TraceError);
  CHECK_THROWS_AS(parse_trace_string("n 3\nbe\n"), TraceError);
  CHECK_THROWS_AS(parse_trace_string("n 3\nbb\nvp 0 | out: 1 | in:\n"), TraceError);
  CHECK_THROWS_AS(parse_trace_string("n 3\nbb\nqs 0\nbe\n"), TraceError);
  CHECK_THROWS_AS(parse_trace_string("n 3\nvp 0 out: 1\n"), TraceError);
  CHECK_THROWS_AS(parse_trace_string("n 3\nfoo\n"), TraceError);
  try {
    parse_trace_string("n 3\n\nqd 0\n");
    FAIL("expected an error");
  } catch (const TraceError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("params") {
  const auto m = parse_params("h=3,eps=0.5");
  CHECK(m.at("h") == "3");
  CHECK(m.at("eps") == "0.5");
  CHECK(parse_params("").empty());
  CHECK_THROWS_AS(parse_params("h"), std::invalid_argument);
  CHECK_THROWS_AS(parse_params("h=1,h=2"), std::invalid_argument);
  const Trace t = parse_trace_string(kCrafted);
  RunOptions o;
  o.params = "nope=1";
  CHECK_THROWS_AS(run_trace(t, o), std::invalid_argument);
  o.params = std::nullopt;
  o.structure = "tc";
  o.mode = "maybe";
  CHECK_THROWS_AS(run_trace(t, o), std::invalid_argument);
}

TEST_CASE("oracles agree") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 10; ++trial) {
    const Digraph g = testing_support::random_digraph(9, 0.2, rng);
    const auto fw = oracle_apsp(g);
    const auto reach = oracle_reachability(g);
    for (Vertex s = 0; s < 9; ++s) {
      CHECK(oracle_bfs_h(g, s, -1) == fw[s]);
      CHECK(fw[s][s] == 0);
      for (Vertex t = 0; t < 9; ++t) {
        CHECK(reach[s][t] == (fw[s][t] != kInfDist));
        for (Vertex m = 0; m < 9; ++m)
          if (fw[s][m] != kInfDist && fw[m][t] != kInfDist) CHECK(fw[s][t] <= fw[s][m] + fw[m][t]);
      }
    }
    for (Vertex s = 0; s < 4; ++s)
      for (Vertex t = 0; t < 4; ++t) CHECK(oracle_walk_counts(g, s, t, 5) == oracle_walk_enumeration(g, s, t, 5));
  }
  Digraph cycle(3);
  cycle.set_edge(0, 1, true);
  cycle.set_edge(1, 2, true);
  cycle.set_edge(2, 0, true);
  CHECK(oracle_walk_counts(cycle, 0, 0, 3) == std::vector<mpz_class>{1, 0, 0, 1});
  Digraph chain(5);
  for (Vertex v = 0; v + 1 < 5; ++v) chain.set_edge(v, v + 1, true);
  CHECK(oracle_bfs_h(chain, 0, 2) == std::vector<Dist>{0, 1, 2, kInfDist, kInfDist});
  CHECK(oracle_bfs_h(Digraph(3), 1, -1) == std::vector<Dist>{kInfDist, 0, kInfDist});
}

TEST_CASE("generator") {
  for (const std::string& name : profile_names()) {
    GenProfile p;
    p.name = name;
    p.n = 14;
    p.steps = 40;
    p.seed = 3;
    const Trace a = gen_trace(p);
    CHECK(a.update_count() == 40);
    CHECK(trace_to_string(a) == trace_to_string(gen_trace(p)));
    p.seed = 4;
    CHECK(trace_to_string(a) != trace_to_string(gen_trace(p)));
    validate_trace(a);
    // Edge events never repeat the current state.
    Digraph g(14);
    for (const Event& e : a.events) {
      if (e.kind == EventKind::kEdge) {
        CHECK(g.has_edge(e.u, e.v) != e.present);
        g.set_edge(e.u, e.v, e.present);
      }
    }
  }
  GenProfile bad;
  bad.name = "nope";
  CHECK_THROWS_AS(gen_trace(bad), std::invalid_argument);
}

TEST_CASE("hub profile targets the most congested vertex") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 5; ++trial) {
    const Digraph g = testing_support::random_digraph(12, 0.2, rng);
    for (std::size_t h : {1, 2, 3}) CHECK(tree_congestion(g, h) == alpha_by_listing(g, h));
  }
  GenProfile p;
  p.name = "hub";
  p.n = 12;
  p.steps = 60;
  p.delta = 6;
  p.h = 2;
  p.seed = 8;
  p.query_every = 0;
  const Trace t = gen_trace(p);
  // Replay: the first deletion of each phase touches the hub of the graph at
  // the phase start.
  Digraph g(12);
  std::size_t updates = 0, phases_with_deletion = 0;
  Vertex hub = hub_vertex(g, 2);
  for (const Event& e : t.events) {
    if (updates % 6 == 0) hub = hub_vertex(g, 2);
    if (updates % 6 == 0 && !g.out_neighbors(hub).empty()) {
      CHECK_FALSE(e.present);
      CHECK((e.u == hub || e.v == hub));
      ++phases_with_deletion;
    }
    g.set_edge(e.u, e.v, e.present);
    ++updates;
  }
  CHECK(phases_with_deletion > 0);
}

TEST_CASE("crafted trace") {
  const Trace t = parse_trace_string(kCrafted);
  const RunReport r = run_trace(t);
  CHECK(r.passed());
  CHECK(r.updates == 4);
  CHECK(r.queries == 5);
  CHECK(r.checked == 5);
  CHECK(r.outcomes.size() == 9);
  for (const std::string s : {"hdist", "apsp", "tc"}) {
    RunOptions o;
    o.structure = s;
    Trace u = t;
    // hdist has no path queries.
    if (s == "hdist") std::erase_if(u.events, [](const Event& e) { return e.kind == EventKind::kQueryPath; });
    CHECK(run_trace(u, o).passed());
  }
}

TEST_CASE("fault injection surfaces a mismatch") {
  for (const std::string s : {"hdist", "sssp", "apsp", "tc"}) {
    GenProfile p;
    p.name = s == "apsp" || s == "tc" ? "vertex" : "random";
    p.n = 10;
    p.steps = 20;
    p.structure = s;
    p.seed = 1;
    const Trace t = gen_trace(p);
    RunOptions o;
    o.structure = s;
    CHECK(run_trace(t, o).mismatches == 0);
    for (std::size_t q = 0; q < t.query_count(); q += 7) {
      o.fault_at = q;
      const RunReport r = run_trace(t, o);
      CHECK(r.mismatches == 1);
      REQUIRE(r.failures().size() == 1);
      CHECK(!r.failures()[0].expected.empty());
    }
    // Without checking nothing is compared.
    o.check = false;
    o.fault_at = 0;
    CHECK(run_trace(t, o).mismatches == 0);
  }
}

TEST_CASE("counters and report merge") {
  GenProfile p;
  p.n = 10;
  p.steps = 20;
  p.seed = 5;
  const Trace t = gen_trace(p);
  RunOptions o;
  o.structure = "sssp";
  const RunReport a = run_trace(t, o);
  CHECK(a.round_ops.size() == a.rounds);
  std::uint64_t sum = 0;
  for (auto x : a.round_ops) sum += x;
  CHECK(sum <= a.ops.total());
  CHECK(a.ops.mul > 0);
  CHECK(!a.rollovers.empty());
  for (std::size_t i = 1; i < a.rollovers.size(); ++i) CHECK(a.rollovers[i] > a.rollovers[i - 1]);
  RunReport x = a, y = a;
  x.merge(a);
  x.merge(a);
  RunReport z = a;
  y.merge(a);
  z.merge(y);
  CHECK(x.events == z.events);
  CHECK(x.ops.total() == z.ops.total());
  CHECK(x.outcomes.size() == z.outcomes.size());
  CHECK(x.events == 3 * a.events);
}
