#include "dyngraph/harness/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>

#include "dyngraph/apsp/dynamic_apsp.hpp"
#include "dyngraph/harness/oracles.hpp"
#include "dyngraph/hdist/hdist_oracle.hpp"
#include "dyngraph/sssp/dynamic_sssp.hpp"
#include "dyngraph/tc/dynamic_tc.hpp"

namespace dyngraph::harness {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string dist_str(Dist d) { return d == kInfDist ? "inf" : std::to_string(d); }

std::string est_str(double d) {
  if (std::isinf(d)) return "inf";
  std::ostringstream out;
  out << d;
  return out.str();
}

std::string path_str(const std::vector<Vertex>& p) {
  if (p.empty()) return "none";
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? " " : "") + std::to_string(p[i]);
  return s;
}

// Every reader of a parameter map marks the keys it consumed.
class Params {
 public:
  explicit Params(ParamMap map) : map_(std::move(map)) {}

  std::size_t size(const std::string& key, std::size_t fallback) { return take(key) ? std::stoull(value_) : fallback; }
  double real(const std::string& key, double fallback) { return take(key) ? std::stod(value_) : fallback; }
  bool flag(const std::string& key, bool fallback) {
    if (!take(key)) return fallback;
    if (value_ == "1" || value_ == "true" || value_ == "on") return true;
    if (value_ == "0" || value_ == "false" || value_ == "off") return false;
    throw std::invalid_argument("parameter " + key + " expects a boolean");
  }
  std::string text(const std::string& key, const std::string& fallback) { return take(key) ? value_ : fallback; }

  void finish(const std::string& structure) const {
    for (const auto& [k, v] : map_)
      if (!used_.count(k)) throw std::invalid_argument("unknown parameter '" + k + "' for " + structure);
  }

 private:
  bool take(const std::string& key) {
    auto it = map_.find(key);
    if (it == map_.end()) return false;
    used_.insert(key);
    value_ = it->second;
    return true;
  }

  ParamMap map_;
  std::set<std::string> used_;
  std::string value_;
};

// Outcome of one query: mismatches carry the first differing value.
struct Probe {
  const Digraph& g;
  bool check;
  bool corrupt;
  EventOutcome& out;

  void fail(std::string expected, std::string actual) {
    if (!out.ok) return;
    out.ok = false;
    out.expected = std::move(expected);
    out.actual = std::move(actual);
  }
};

void corrupt_dist(Dist& d) { d = d == kInfDist ? 1 : d + 1; }

void corrupt_path(std::vector<Vertex>& p, Vertex s, Vertex t) {
  if (p.empty())
    p = {s, t};
  else if (p.size() == 1)
    p.push_back(s);
  else
    p.pop_back();
}

// Exact comparison of a distance row against the oracle.
void compare_row(Probe& pr, Vertex s, std::vector<Dist> got, const std::vector<Dist>& want) {
  if (pr.corrupt) corrupt_dist(got[(s + 1) % got.size()]);
  if (!pr.check) return;
  for (Vertex t = 0; t < want.size(); ++t)
    if (got[t] != want[t]) {
      const std::string cell = "d(" + std::to_string(s) + "," + std::to_string(t) + ")=";
      return pr.fail(cell + dist_str(want[t]), cell + dist_str(got[t]));
    }
}

void compare_dist(Probe& pr, Vertex s, Vertex t, Dist got, Dist want) {
  if (pr.corrupt) corrupt_dist(got);
  if (pr.check && got != want) {
    const std::string cell = "d(" + std::to_string(s) + "," + std::to_string(t) + ")=";
    pr.fail(cell + dist_str(want), cell + dist_str(got));
  }
}

class Driver {
 public:
  virtual ~Driver() = default;
  virtual void edge(Vertex u, Vertex v, bool present) = 0;
  virtual void batch(const std::vector<VertexPatch>& patches) = 0;
  virtual void query(const Event& e, Probe& pr) = 0;
  virtual std::uint64_t rollovers() const { return 0; }
  std::size_t rounds = 0;
};

class HDistDriver : public Driver {
 public:
  HDistDriver(std::size_t n, RingMode mode, std::uint64_t seed, Params& p) : oracle_(config(n, mode, seed, p)) {}

  void edge(Vertex u, Vertex v, bool present) override {
    oracle_.edge_update(u, v, present);
    ++rounds;
  }
  void batch(const std::vector<VertexPatch>& patches) override {
    oracle_.vertex_batch_update(patches);
    ++rounds;
  }
  void query(const Event& e, Probe& pr) override {
    const int h = static_cast<int>(oracle_.hop_bound());
    switch (e.kind) {
      case EventKind::kQuerySssp:
        return compare_row(pr, e.u, oracle_.source_distances(e.u), pr.check ? oracle_bfs_h(pr.g, e.u, h) : std::vector<Dist>{});
      case EventKind::kQueryDist:
        return compare_dist(pr, e.u, e.v, oracle_.pair_distance(e.u, e.v),
                            pr.check ? oracle_bfs_h(pr.g, e.u, h)[e.v] : 0);
      default:
        throw std::invalid_argument("hdist answers only qs and qd");
    }
  }

 private:
  static HDistConfig config(std::size_t n, RingMode mode, std::uint64_t seed, Params& p) {
    HDistConfig c;
    c.n = n;
    c.h = p.size("h", std::min<std::size_t>(n, 4));
    c.mode = mode;
    c.cap = p.size("cap", 0);
    c.seed = seed;
    c.all_pairs = p.flag("all_pairs", false);
    p.finish("hdist");
    return c;
  }

  HDistOracle oracle_;
};

class SsspDriver : public Driver {
 public:
  SsspDriver(std::size_t n, RingMode mode, std::uint64_t seed, Params& p, bool trees) : st_(n, params(mode, seed, p, trees)) {}

  void edge(Vertex u, Vertex v, bool present) override {
    st_.update(u, v, present);
    ++rounds;
  }
  // Edge updates realizing each patch in turn.
  void batch(const std::vector<VertexPatch>& patches) override {
    for (const VertexPatch& patch : patches) {
      Digraph after = st_.graph();
      after.apply_patch(patch);
      const Vertex x = patch.v;
      for (Vertex w = 0; w < st_.num_vertices(); ++w) {
        if (st_.graph().has_edge(x, w) != after.has_edge(x, w)) edge(x, w, after.has_edge(x, w));
        if (w != x && st_.graph().has_edge(w, x) != after.has_edge(w, x)) edge(w, x, after.has_edge(w, x));
      }
    }
  }
  void query(const Event& e, Probe& pr) override {
    const std::size_t n = st_.num_vertices();
    switch (e.kind) {
      case EventKind::kQuerySssp:
        return compare_row(pr, e.u, st_.query(e.u), pr.check ? oracle_bfs_h(pr.g, e.u, -1) : std::vector<Dist>{});
      case EventKind::kQueryDist:
        return compare_dist(pr, e.u, e.v, st_.query(e.u)[e.v], pr.check ? oracle_bfs_h(pr.g, e.u, -1)[e.v] : 0);
      case EventKind::kQueryPath: {
        auto path = st_.expand_path(e.u, e.v);
        if (pr.corrupt) corrupt_path(path, e.u, e.v);
        if (!pr.check) return;
        const Dist want = oracle_bfs_h(pr.g, e.u, -1)[e.v];
        const bool ok = want == kInfDist ? path.empty()
                                         : is_valid_path(pr.g, path, e.u, e.v) && path.size() == std::size_t(want) + 1;
        if (!ok) pr.fail("shortest path of length " + dist_str(want), path_str(path));
        return;
      }
      case EventKind::kQueryTrees: {
        const Vertex first = e.u == kNoVertex ? 0 : e.u;
        const Vertex last = e.u == kNoVertex ? Vertex(n - 1) : e.u;
        for (Vertex s = first; s <= last; ++s) {
          PathTree tree = st_.tree_query(s);
          if (pr.corrupt) corrupt_dist(tree.dist[(s + 1) % n]);
          if (!pr.check) continue;
          const auto want = oracle_bfs_h(pr.g, s, -1);
          for (Vertex v = 0; v < n; ++v) {
            bool ok = tree.dist[v] == want[v];
            if (ok && v != s && want[v] != kInfDist) {
              const Vertex q = tree.pred[v];
              ok = q != kNoVertex && pr.g.has_edge(q, v) && want[q] + 1 == want[v];
            }
            if (!ok) {
              const std::string cell = "tree " + std::to_string(s) + " at " + std::to_string(v) + ": ";
              return pr.fail(cell + "d=" + dist_str(want[v]), cell + "d=" + dist_str(tree.dist[v]));
            }
          }
        }
        return;
      }
      default:
        throw std::invalid_argument("sssp answers qs, qd, qp and qtr");
    }
  }
  std::uint64_t rollovers() const override { return st_.diagnostics().rollovers; }

 private:
  static SsspParams params(RingMode mode, std::uint64_t seed, Params& p, bool trees) {
    SsspParams s;
    s.mode = mode;
    s.seed = seed;
    s.h = p.size("h", 0);
    s.tau = p.real("tau", s.tau);
    s.delta = p.size("delta", 0);
    s.b = p.size("b", 0);
    s.cap = p.size("cap", 0);
    s.sample_constant = p.real("c", s.sample_constant);
    s.tree_reporting = p.flag("trees", trees);
    s.tree_inner_h = p.size("tree_h", s.tree_inner_h);
    p.finish("sssp");
    return s;
  }

  DynamicSssp st_;
};

VertexPatch toggle_patch(const Digraph& g, Vertex u, Vertex v, bool present) {
  Digraph after = g;
  after.set_edge(u, v, present);
  return after.patch_of(u);
}

class ApspDriver : public Driver {
 public:
  ApspDriver(std::size_t n, RingMode mode, std::uint64_t seed, Params& p) : st_(n, params(mode, seed, p)) {}

  void edge(Vertex u, Vertex v, bool present) override { batch({toggle_patch(st_.graph(), u, v, present)}); }
  void batch(const std::vector<VertexPatch>& patches) override {
    st_.vertex_update(patches);
    ++rounds;
  }
  void query(const Event& e, Probe& pr) override {
    const std::size_t n = st_.num_vertices();
    switch (e.kind) {
      case EventKind::kQuerySssp:
      case EventKind::kQueryDist: {
        const std::vector<Dist> want = pr.check ? oracle_bfs_h(pr.g, e.u, -1) : std::vector<Dist>(n, 0);
        const Vertex first = e.kind == EventKind::kQueryDist ? e.v : 0;
        const Vertex last = e.kind == EventKind::kQueryDist ? e.v : Vertex(n - 1);
        for (Vertex t = first; t <= last; ++t) {
          double est = st_.estimate(e.u, t);
          if (pr.corrupt && t == (e.kind == EventKind::kQueryDist ? e.v : (e.u + 1) % n))
            est = std::isinf(est) ? 1 : est + 1 + 2 * est;
          if (pr.check && !within(est, want[t])) {
            const std::string cell = "d(" + std::to_string(e.u) + "," + std::to_string(t) + ")";
            return pr.fail(cell + " in " + bounds(want[t]), cell + "=" + est_str(est));
          }
        }
        return;
      }
      case EventKind::kQueryPath: {
        auto path = st_.report_path(e.u, e.v);
        if (pr.corrupt) corrupt_path(path, e.u, e.v);
        if (!pr.check) return;
        const double est = st_.estimate(e.u, e.v);
        const std::uint64_t probes = st_.diagnostics().last_report_probes;
        bool ok;
        if (std::isinf(est))
          ok = path.empty();
        else
          ok = is_valid_path(pr.g, path, e.u, e.v) && double(path.size() - 1) <= est + 1e-9 &&
               probes <= 2 * (path.size() - 1) + 1;
        if (!ok) pr.fail("path of length <= " + est_str(est), path_str(path) + " (" + std::to_string(probes) + " probes)");
        return;
      }
      case EventKind::kQueryTrees: {
        const auto trees = st_.reachability_trees();
        for (Vertex s = 0; s < n; ++s) {
          if (e.u != kNoVertex && s != e.u) continue;
          std::vector<Dist> got = trees[s].dist;
          if (pr.corrupt) corrupt_dist(got[(s + 1) % n]);
          if (!pr.check) continue;
          const auto want = oracle_bfs_h(pr.g, s, -1);
          for (Vertex v = 0; v < n; ++v) {
            bool ok = (got[v] == kInfDist) == (want[v] == kInfDist);
            if (ok && v != s && want[v] != kInfDist) ok = pr.g.has_edge(trees[s].pred[v], v);
            if (!ok) {
              const std::string cell = "reach(" + std::to_string(s) + "," + std::to_string(v) + ")=";
              return pr.fail(cell + (want[v] == kInfDist ? "0" : "1"), cell + (got[v] == kInfDist ? "0" : "1"));
            }
          }
        }
        return;
      }
      default:
        throw std::invalid_argument("apsp answers qs, qd, qp and qtr");
    }
  }
  std::uint64_t rollovers() const override { return st_.diagnostics().rollovers; }

 private:
  bool exact() const { return st_.params().rounding != apsp::Rounding::kScaled; }
  bool within(double est, Dist d) const {
    if (d == kInfDist) return std::isinf(est);
    if (exact()) return est == double(d);
    return est >= double(d) - 1e-9 && est <= (1 + st_.params().eps) * double(d) + 1e-9;
  }
  std::string bounds(Dist d) const {
    if (d == kInfDist) return "{inf}";
    if (exact()) return "{" + std::to_string(d) + "}";
    return "[" + std::to_string(d) + ", " + est_str((1 + st_.params().eps) * double(d)) + "]";
  }

  static apsp::ApspParams params(RingMode mode, std::uint64_t seed, Params& p) {
    apsp::ApspParams a;
    a.mode = mode;
    a.seed = seed;
    a.h = p.size("h", 0);
    a.tau = p.real("tau", a.tau);
    a.delta = p.size("delta", 0);
    a.b = p.size("b", 0);
    a.cap = p.size("cap", 0);
    a.eps = p.real("eps", a.eps);
    a.eps_constant = p.real("eps_c", a.eps_constant);
    const std::string rounding = p.text("rounding", "scaled");
    if (rounding == "scaled")
      a.rounding = apsp::Rounding::kScaled;
    else if (rounding == "lossless")
      a.rounding = apsp::Rounding::kLossless;
    else if (rounding == "exact")
      a.rounding = apsp::Rounding::kExact;
    else
      throw std::invalid_argument("rounding must be scaled, lossless or exact");
    const std::string kernel = p.text("kernel", "naive");
    if (kernel != "naive" && kernel != "poly") throw std::invalid_argument("kernel must be naive or poly");
    a.kernel = kernel == "poly" ? apsp::InnerKernel::kPolynomial : apsp::InnerKernel::kNaive;
    a.parallel = p.flag("parallel", a.parallel);
    a.all_hitting = p.flag("all_hitting", a.all_hitting);
    p.finish("apsp");
    return a;
  }

  apsp::DynamicApsp st_;
};

class TcDriver : public Driver {
 public:
  TcDriver(std::size_t n, RingMode mode, std::uint64_t seed, Params& p) : st_(n, params(mode, seed, p)) {}

  void edge(Vertex u, Vertex v, bool present) override { batch({toggle_patch(st_.graph(), u, v, present)}); }
  void batch(const std::vector<VertexPatch>& patches) override {
    st_.vertex_update(patches);
    ++rounds;
  }
  void query(const Event& e, Probe& pr) override {
    const std::size_t n = st_.num_vertices();
    switch (e.kind) {
      case EventKind::kQueryTc:
      case EventKind::kQuerySssp:
      case EventKind::kQueryDist: {
        const auto want = pr.check ? oracle_reachability(pr.g) : std::vector<std::vector<bool>>{};
        for (Vertex s = 0; s < n; ++s) {
          if (e.kind != EventKind::kQueryTc && s != e.u) continue;
          for (Vertex t = 0; t < n; ++t) {
            if (e.kind == EventKind::kQueryDist && t != e.v) continue;
            bool got = st_.reachable(s, t);
            const bool target = e.kind == EventKind::kQueryDist ? t == e.v : t == (s + 1) % n;
            if (pr.corrupt && target && (e.kind != EventKind::kQueryTc || s == 0)) got = !got;
            if (pr.check && got != want[s][t]) {
              const std::string cell = "reach(" + std::to_string(s) + "," + std::to_string(t) + ")=";
              return pr.fail(cell + (want[s][t] ? "1" : "0"), cell + (got ? "1" : "0"));
            }
          }
        }
        return;
      }
      case EventKind::kQueryPath: {
        std::vector<Vertex> path;
        if (st_.reachable(e.u, e.v)) path = st_.report_path(e.u, e.v);
        if (pr.corrupt) corrupt_path(path, e.u, e.v);
        if (!pr.check) return;
        const bool reach = oracle_reachability(pr.g)[e.u][e.v];
        const std::uint64_t probes = st_.diagnostics().last_report_probes;
        const bool ok = reach ? is_valid_path(pr.g, path, e.u, e.v) && probes <= 2 * n : path.empty();
        if (!ok) pr.fail(reach ? "a path" : "none", path_str(path) + " (" + std::to_string(probes) + " probes)");
        return;
      }
      default:
        throw std::invalid_argument("tc answers qtc, qs, qd and qp");
    }
  }

 private:
  static tc::TcParams params(RingMode mode, std::uint64_t seed, Params& p) {
    tc::TcParams t;
    t.mode = mode;
    t.seed = seed;
    t.d = p.size("d", 0);
    t.h = p.size("h", 0);
    t.cap = p.size("cap", 0);
    t.parallel = p.flag("parallel", t.parallel);
    p.finish("tc");
    return t;
  }

  tc::DynamicTc st_;
};

}  // namespace

std::vector<EventOutcome> RunReport::failures() const {
  std::vector<EventOutcome> out;
  for (const EventOutcome& o : outcomes)
    if (!o.ok) out.push_back(o);
  return out;
}

void RunReport::merge(const RunReport& o) {
  if (structure.empty()) structure = o.structure;
  if (mode.empty()) mode = o.mode;
  n = std::max(n, o.n);
  events += o.events;
  updates += o.updates;
  rounds += o.rounds;
  queries += o.queries;
  checked += o.checked;
  mismatches += o.mismatches;
  outcomes.insert(outcomes.end(), o.outcomes.begin(), o.outcomes.end());
  ops.mul += o.ops.mul;
  ops.add += o.ops.add;
  round_ops.insert(round_ops.end(), o.round_ops.begin(), o.round_ops.end());
  rollovers.insert(rollovers.end(), o.rollovers.begin(), o.rollovers.end());
  build_seconds += o.build_seconds;
  update_seconds += o.update_seconds;
  query_seconds += o.query_seconds;
  check_seconds += o.check_seconds;
}

ParamMap parse_params(const std::string& text) {
  ParamMap map;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == item.size())
      throw std::invalid_argument("malformed parameter '" + item + "', expected k=v");
    if (!map.emplace(item.substr(0, eq), item.substr(eq + 1)).second)
      throw std::invalid_argument("duplicate parameter '" + item.substr(0, eq) + "'");
  }
  return map;
}

RunReport run_trace(const Trace& trace, const RunOptions& options) {
  validate_trace(trace);
  RunReport report;
  report.structure = options.structure.value_or(trace.structure);
  report.mode = options.mode.value_or(trace.mode.empty() ? "det" : trace.mode);
  report.n = trace.n;
  if (report.structure.empty()) throw std::invalid_argument("no structure given on the command line or in the trace");
  if (report.mode != "det" && report.mode != "rand") throw std::invalid_argument("mode must be det or rand");
  const RingMode mode = report.mode == "det" ? RingMode::kDeterministic : RingMode::kRandomized;
  const std::uint64_t seed = options.seed.value_or(trace.seed);
  Params params(parse_params(options.params.value_or(trace.params)));

  const auto build_start = Clock::now();
  std::unique_ptr<Driver> driver;
  const std::size_t n = trace.n;
  if (report.structure == "hdist") {
    driver = std::make_unique<HDistDriver>(n, mode, seed, params);
  } else if (report.structure == "sssp") {
    const bool trees = std::any_of(trace.events.begin(), trace.events.end(),
                                   [](const Event& e) { return e.kind == EventKind::kQueryTrees; });
    driver = std::make_unique<SsspDriver>(n, mode, seed, params, trees);
  } else if (report.structure == "apsp") {
    driver = std::make_unique<ApspDriver>(n, mode, seed, params);
  } else if (report.structure == "tc") {
    driver = std::make_unique<TcDriver>(n, mode, seed, params);
  } else {
    throw std::invalid_argument("unknown structure '" + report.structure + "'");
  }
  report.build_seconds = seconds_since(build_start);

  Digraph shadow(n);
  std::vector<VertexPatch> pending;
  std::vector<std::size_t> pending_events;
  bool in_batch = false;
  std::size_t query_index = 0;
  std::uint64_t seen_rollovers = driver->rollovers();
  const algebra::OpCounts ops_start = algebra::OpCounter::snapshot();

  auto timed_update = [&](auto&& fn, std::size_t index) {
    const auto before = algebra::OpCounter::snapshot();
    const auto start = Clock::now();
    fn();
    report.update_seconds += seconds_since(start);
    report.round_ops.push_back((algebra::OpCounter::snapshot() - before).total());
    const std::uint64_t r = driver->rollovers();
    if (r != seen_rollovers) {
      report.rollovers.push_back(index);
      seen_rollovers = r;
    }
  };
  auto record_update = [&](std::size_t index, std::size_t line) {
    ++report.updates;
    report.outcomes.push_back({index, line, true, {}, {}});
  };

  for (std::size_t i = 0; i < trace.events.size(); ++i) {
    const Event& e = trace.events[i];
    ++report.events;
    switch (e.kind) {
      case EventKind::kBatchBegin:
        in_batch = true;
        break;
      case EventKind::kBatchEnd:
        in_batch = false;
        if (!pending.empty()) timed_update([&] { driver->batch(pending); }, i);
        pending.clear();
        break;
      case EventKind::kEdge:
        if (in_batch) throw TraceError(e.line, "edge updates are not allowed inside a batch");
        record_update(i, e.line);  // no-ops included
        shadow.set_edge(e.u, e.v, e.present);
        timed_update([&] { driver->edge(e.u, e.v, e.present); }, i);
        break;
      case EventKind::kPatch:
        for (const VertexPatch& p : pending)
          if (p.v == e.patch.v) throw TraceError(e.line, "vertex patched twice in one batch");
        record_update(i, e.line);
        shadow.apply_patch(e.patch);
        if (in_batch) {
          pending.push_back(e.patch);
        } else {
          timed_update([&] { driver->batch({e.patch}); }, i);
        }
        break;
      default: {
        ++report.queries;
        EventOutcome outcome{i, e.line, true, {}, {}};
        Probe probe{shadow, options.check, options.fault_at && *options.fault_at == query_index, outcome};
        const auto start = Clock::now();
        driver->query(e, probe);
        // With checking on, the oracle time is lumped in with the query.
        (options.check ? report.check_seconds : report.query_seconds) += seconds_since(start);
        if (options.check) ++report.checked;
        if (!outcome.ok) ++report.mismatches;
        report.outcomes.push_back(std::move(outcome));
        ++query_index;
      }
    }
  }
  report.rounds = driver->rounds;
  report.ops = algebra::OpCounter::snapshot() - ops_start;
  return report;
}

}  // namespace dyngraph::harness
