#include "dyngraph/apsp/dynamic_apsp.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "dyngraph/collection/build.hpp"
#include "dyngraph/graph/scc.hpp"
#include "dyngraph/hitting/hitting.hpp"

namespace dyngraph::apsp {

namespace {

std::size_t log2_ceil(std::size_t n) { return n <= 1 ? 0 : static_cast<std::size_t>(std::bit_width(n - 1)); }

DistMatrix finiteness(const DistMatrix& m) {
  DistMatrix out(m.rows, m.cols);
  for (std::size_t i = 0; i < m.v.size(); ++i) out.v[i] = m.v[i] == kInf ? kInf : 0.0;
  return out;
}

}  // namespace

ApspParams resolve_apsp_params(std::size_t n, ApspParams p) {
  if (n == 0) throw std::invalid_argument("apsp needs n >= 1");
  if (p.h == 0) p.h = std::min(n, std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::cbrt(double(n)) - 1e-9))));
  if (p.delta == 0) p.delta = (n + 3) / 4;
  if (p.b == 0) p.b = (n + 1) / 2;
  if (p.cap == 0) p.cap = default_cap(n);
  auto in_range = [n](std::size_t x) { return x >= 1 && x <= n; };
  if (!in_range(p.h) || !in_range(p.delta) || !in_range(p.b) || !(p.tau >= 1.0 && p.tau <= double(n)))
    throw std::invalid_argument("apsp parameters must satisfy 1 <= h, tau, delta, b <= n");
  if (!(p.eps > 0) || !(p.eps_constant > 0)) throw std::invalid_argument("eps and its constant must be positive");
  return p;
}

void PathDag::clear() {
  nodes_.clear();
  leaves_.clear();
}

std::int32_t PathDag::leaf(std::vector<Vertex> path) {
  leaves_.push_back(std::move(path));
  nodes_.push_back({kNone, kNone, static_cast<std::uint32_t>(leaves_.size() - 1)});
  return static_cast<std::int32_t>(nodes_.size() - 1);
}

std::int32_t PathDag::concat(std::int32_t left, std::int32_t right) {
  if (left == kNone || right == kNone) throw std::logic_error("concatenating an undefined path");
  nodes_.push_back({left, right, 0});
  return static_cast<std::int32_t>(nodes_.size() - 1);
}

void PathDag::expand(std::int32_t node, std::vector<Vertex>& out, std::uint64_t& probes) const {
  std::vector<std::int32_t> stack{node};
  while (!stack.empty()) {
    const Node& x = nodes_[static_cast<std::size_t>(stack.back())];
    stack.pop_back();
    ++probes;
    if (x.left != kNone) {
      stack.push_back(x.right);
      stack.push_back(x.left);
      continue;
    }
    const auto& p = leaves_[x.leaf];
    if (out.empty()) {
      out = p;
    } else {
      if (out.back() != p.front()) throw std::logic_error("dag pieces do not meet");
      out.insert(out.end(), p.begin() + 1, p.end());
    }
  }
}

DynamicApsp::DynamicApsp(std::size_t n, const ApspParams& params)
    : n_(n),
      params_(resolve_apsp_params(n, params)),
      graph_(n),
      t_(ReporterConfig{n, params_.h, params_.b, BlocksVariant::kBinarySearch, params_.mode, params_.cap, params_.seed,
                        false}),
      pc_(n),
      in_d_(n, 0),
      stamp_(n, 0) {
  diag_.n = n;
  diag_.params = params_;
  const std::size_t logn = std::max<std::size_t>(1, log2_ceil(n));
  diag_.eps_prime = params_.eps / (params_.eps_constant * double(logn));
  start_phase();
  rebuild_paths();
  evaluate();
}

void DynamicApsp::start_phase() {
  for (Vertex x : d_list_) t_.switch_set(x, true);
  if (!d_list_.empty()) {
    std::vector<VertexPatch> batch;
    for (Vertex x : d_list_) batch.push_back(graph_.patch_of(x));
    t_.vertex_batch_update(batch);
  }
  for (Vertex x : d_list_) in_d_[x] = 0;
  d_list_.clear();
  y_.clear();
  pc_ = build_collection_threshold(t_, params_.tau);
  diag_.phase_updates = 0;
}

const std::vector<double>& DynamicApsp::vertex_update(std::span<const VertexPatch> patches) {
  if (patches.empty()) throw std::invalid_argument("a vertex update needs at least one patch");
  for (const VertexPatch& p : patches) {
    check_vertex(n_, p.v);
    for (Vertex w : p.out) check_vertex(n_, w);
    for (Vertex w : p.in) check_vertex(n_, w);
  }
  for (const VertexPatch& p : patches) {
    graph_.apply_patch(p);
    if (in_d_[p.v]) continue;
    in_d_[p.v] = 1;
    d_list_.push_back(p.v);
    t_.switch_set(p.v, false);
    for (const auto& pair : pc_.mark_affected(p.v)) y_.push_back(pair);
  }
  diag_.phase_updates += patches.size();
  if (diag_.phase_updates >= params_.delta) {
    start_phase();
    ++diag_.rollovers;
  }
  rebuild_paths();
  evaluate();
  ++diag_.rounds;
  return estimate_;
}

void DynamicApsp::rebuild_paths() {
  rebuilt_.assign(n_ * n_, {});
  tags_.assign(n_ * n_, RebuiltTag::kNone);
  for (Vertex s = 0; s < n_; ++s) {
    rebuilt_[std::size_t{s} * n_ + s] = {s};
    tags_[std::size_t{s} * n_ + s] = RebuiltTag::kTrivial;
  }
  for (const StoredPath& p : pc_.paths()) {
    if (p.affected) continue;
    rebuilt_[std::size_t{p.s} * n_ + p.t] = p.vertices;
    tags_[std::size_t{p.s} * n_ + p.t] = RebuiltTag::kCopied;
  }
  if (!y_.empty()) {
    // Predecessors in G - D for every affected pair, sources S = V.
    std::vector<Vertex> sources(n_);
    std::iota(sources.begin(), sources.end(), Vertex{0});
    const auto answers = t_.submatrix_predecessors(sources, y_);
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < y_.size(); ++i)
      if (answers[i].dist != kInfDist && answers[i].pred != kNoVertex) order.push_back(i);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return answers[a].dist < answers[b].dist; });
    for (std::size_t i : order) {
      const auto [s, t] = y_[i];
      const Vertex q = answers[i].pred;
      const auto& base = rebuilt_[std::size_t{s} * n_ + q];
      if (base.empty()) continue;
      auto path = base;
      path.push_back(t);
      rebuilt_[std::size_t{s} * n_ + t] = std::move(path);
      tags_[std::size_t{s} * n_ + t] = RebuiltTag::kExtended;
    }
  }
  diag_.y_size = y_.size();

  std::vector<std::vector<Vertex>> family;
  for (std::size_t c = 0; c < rebuilt_.size(); ++c)
    if (rebuilt_[c].size() == params_.h + 1) family.push_back(rebuilt_[c]);
  hitting_ = greedy_hitting_set(n_, family, params_.h + 1);
  std::sort(hitting_.begin(), hitting_.end());

  x_.clear();
  if (params_.all_hitting) {
    x_.resize(n_);
    std::iota(x_.begin(), x_.end(), Vertex{0});
  } else {
    x_ = hitting_;
    x_.insert(x_.end(), d_list_.begin(), d_list_.end());
    x_.insert(x_.end(), pc_.congested().begin(), pc_.congested().end());
    std::sort(x_.begin(), x_.end());
    x_.erase(std::unique(x_.begin(), x_.end()), x_.end());
  }
  diag_.x_size = x_.size();
  diag_.hitting_size = hitting_.size();
  diag_.congested = pc_.congested().size();
  diag_.affected_vertices = d_list_.size();
}

std::vector<Vertex> DynamicApsp::star_path(Vertex a, Vertex b) const {
  if (a != b && graph_.has_edge(a, b)) return {a, b};
  if (a == b) return {};
  return rebuilt_[std::size_t{a} * n_ + b];
}

DynamicApsp::Labeled DynamicApsp::select(const Labeled& m, const std::vector<Vertex>& rows,
                                         const std::vector<Vertex>& cols) const {
  // Labels of m are 0..n-1 in order, so a label is its own index.
  Labeled out{rows, cols, DistMatrix(rows.size(), cols.size()), std::vector<std::int32_t>(rows.size() * cols.size())};
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) {
      out.val.at(i, j) = m.val.at(rows[i], cols[j]);
      out.node[i * cols.size() + j] = m.node[std::size_t{rows[i]} * m.cols.size() + cols[j]];
    }
  return out;
}

DynamicApsp::Labeled DynamicApsp::product(const Labeled& left, const Labeled& right, const MinplusConfig& config) {
  if (left.cols != right.rows) throw std::logic_error("product labels do not match");
  const auto& inner = left.cols;
  Labeled out{left.rows, right.cols, {}, {}};
  WitnessedMatrix w = approx_minplus(left.val, right.val, config);
  ++diag_.products;
  out.node.assign(out.rows.size() * out.cols.size(), PathDag::kNone);
  for (std::size_t i = 0; i < out.rows.size(); ++i)
    for (std::size_t j = 0; j < out.cols.size(); ++j) {
      const std::size_t c = i * out.cols.size() + j;
      if (w.values.v[c] == kInf) continue;
      const std::uint32_t k = w.witness[c];
      const Vertex s = out.rows[i], t = out.cols[j], via = inner[k];
      const std::int32_t l = left.node[i * inner.size() + k];
      const std::int32_t r = right.node[std::size_t{k} * right.cols.size() + j];
      if (via == t)
        out.node[c] = l;
      else if (via == s)
        out.node[c] = r;
      else
        out.node[c] = dag_.concat(l, r);
    }
  out.val = std::move(w.values);
  return out;
}

void DynamicApsp::evaluate() {
  dag_.clear();
  a_ = DistMatrix(n_, n_);
  Labeled base{std::vector<Vertex>(n_), std::vector<Vertex>(n_), DistMatrix(n_, n_),
               std::vector<std::int32_t>(n_ * n_, PathDag::kNone)};
  std::iota(base.rows.begin(), base.rows.end(), Vertex{0});
  base.cols = base.rows;
  for (Vertex s = 0; s < n_; ++s)
    for (Vertex t = 0; t < n_; ++t) {
      const std::size_t c = std::size_t{s} * n_ + t;
      std::vector<Vertex> p;
      if (s == t)
        p = {s};
      else if (graph_.has_edge(s, t))
        p = {s, t};
      else
        p = rebuilt_[c];
      if (p.empty()) continue;
      a_.v[c] = double(p.size() - 1);
      base.node[c] = dag_.leaf(std::move(p));
    }
  base.val = a_;

  MinplusConfig config;
  config.rounding = params_.rounding;
  config.eps = diag_.eps_prime;
  config.kernel = params_.kernel;
  config.parallel = params_.parallel;

  estimate_ = a_.v;
  best_node_ = base.node;
  const std::size_t squarings = log2_ceil(n_);
  diag_.depth = 0;
  if (!x_.empty()) {
    // min(A, (A * A[V,X]) * (A[X,V] * A * A[V,X])^n * (A[X,V] * A))
    const Labeled avx = select(base, base.rows, x_), axv = select(base, x_, base.cols);
    const Labeled p = product(base, avx, config);
    const Labeled q = product(axv, base, config);
    Labeled b = product(q, avx, config);
    for (std::size_t i = 0; i < squarings; ++i) b = product(b, b, config);
    const Labeled pb = product(p, b, config);
    const Labeled r = product(pb, q, config);
    for (std::size_t c = 0; c < estimate_.size(); ++c)
      if (r.val.v[c] < estimate_[c]) {
        estimate_[c] = r.val.v[c];
        best_node_[c] = r.node[c];
      }
    diag_.depth = squarings + 4;
  }
  diag_.guaranteed_ratio =
      params_.rounding == Rounding::kExact ? 1.0 : std::pow(1.0 + diag_.eps_prime, double(diag_.depth));
  diag_.dag_nodes = dag_.size();
}

std::vector<Vertex> DynamicApsp::report_path(Vertex s, Vertex t) {
  check_vertex(n_, s);
  check_vertex(n_, t);
  diag_.last_report_probes = 0;
  const std::int32_t node = best_node_[std::size_t{s} * n_ + t];
  if (node == PathDag::kNone) return {};
  std::vector<Vertex> walk;
  dag_.expand(node, walk, diag_.last_report_probes);
  // Loop erasure keeps the walk's endpoints and never lengthens it.
  if (++stamp_clock_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    stamp_clock_ = 1;
  }
  std::vector<Vertex> path;
  for (Vertex v : walk) {
    if (stamp_[v] == stamp_clock_) {
      while (path.back() != v) {
        stamp_[path.back()] = 0;
        path.pop_back();
      }
      continue;
    }
    stamp_[v] = stamp_clock_;
    path.push_back(v);
  }
  return path;
}

DynamicApsp::ReachData DynamicApsp::reach_data() const {
  ReachData r;
  r.x_index.assign(n_, -1);
  for (std::size_t i = 0; i < x_.size(); ++i) r.x_index[x_[i]] = static_cast<std::int32_t>(i);
  const auto scc = strongly_connected_components(graph_);
  r.skeleton = scc_skeleton(graph_, scc);

  const DistMatrix a = finiteness(a_);
  DistMatrix star(n_, n_);
  for (std::size_t c = 0; c < estimate_.size(); ++c) star.v[c] = estimate_[c] == kInf ? kInf : 0.0;
  DistMatrix axv(x_.size(), n_);
  for (std::size_t i = 0; i < x_.size(); ++i)
    for (Vertex v = 0; v < n_; ++v) axv.at(i, v) = a.at(x_[i], v);
  r.l = parallel::minplus(axv, a);

  // A'_{u,v} = 0 iff u, v are not strongly connected and A_{u,v} is finite
  // or (u in X and (A[X,V] * A)_{u,v} is finite).
  DistMatrix prime(n_, n_);
  for (Vertex u = 0; u < n_; ++u)
    for (Vertex v = 0; v < n_; ++v) {
      if (scc.component[u] == scc.component[v]) continue;
      const std::int32_t xi = r.x_index[u];
      const bool via = xi >= 0 && r.l.values.at(static_cast<std::size_t>(xi), v) != kInf;
      if (a.at(u, v) != kInf || via) prime.at(u, v) = 0.0;
    }
  DistMatrix star_vx(n_, x_.size()), prime_xv(x_.size(), n_), prime_vx(n_, x_.size());
  for (Vertex u = 0; u < n_; ++u)
    for (std::size_t j = 0; j < x_.size(); ++j) {
      star_vx.at(u, j) = star.at(u, x_[j]);
      prime_vx.at(u, j) = prime.at(u, x_[j]);
      prime_xv.at(j, u) = prime.at(x_[j], u);
    }
  r.fv = parallel::minplus(star_vx, prime_xv);
  r.fx = parallel::minplus(star, prime_vx);
  return r;
}

Digraph DynamicApsp::subgraph_from(const ReachData& r, Vertex s) const {
  Digraph g = r.skeleton;
  auto add = [&g](const std::vector<Vertex>& p) {
    for (std::size_t i = 0; i + 1 < p.size(); ++i) g.set_edge(p[i], p[i + 1], true);
  };
  // A certificate from x into v's component: the direct path, or the two
  // halves through L's witness when only the product entry is finite.
  auto certify = [&](Vertex x, Vertex v) {
    if (a_.at(x, v) != kInf) {
      add(star_path(x, v));
      return;
    }
    const std::int32_t xi = r.x_index[x];
    if (xi < 0) throw std::logic_error("reachability witness outside X without a direct path");
    const Vertex w = r.l.witness_at(static_cast<std::size_t>(xi), v);
    add(star_path(x, w));
    add(star_path(w, v));
  };
  for (Vertex t = 0; t < n_; ++t) add(star_path(s, t));
  for (Vertex t = 0; t < n_; ++t)
    if (r.fv.values.at(s, t) != kInf) certify(x_[r.fv.witness_at(s, t)], t);
  for (std::size_t j = 0; j < x_.size(); ++j)
    if (r.fx.values.at(s, j) != kInf) certify(r.fx.witness_at(s, j), x_[j]);
  return g;
}

Digraph DynamicApsp::reachability_subgraph(Vertex s) const {
  check_vertex(n_, s);
  return subgraph_from(reach_data(), s);
}

std::vector<PathTree> DynamicApsp::reachability_trees() const {
  const ReachData r = reach_data();
  std::vector<PathTree> out;
  out.reserve(n_);
  for (Vertex s = 0; s < n_; ++s) out.push_back(bfs_tree(subgraph_from(r, s), s));
  return out;
}

}  // namespace dyngraph::apsp
