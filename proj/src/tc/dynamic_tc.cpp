#include "dyngraph/tc/dynamic_tc.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace dyngraph::tc {

namespace {

void multiply_row(const BoolMatrix& a, const BoolMatrix& b, BoolMatrix& c, std::size_t i) {
  std::uint64_t* out = c.row(i);
  const std::uint64_t* ar = a.row(i);
  for (std::size_t w = 0; w < a.words(); ++w) {
    std::uint64_t bits = ar[w];
    while (bits) {
      const std::size_t k = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
      bits &= bits - 1;
      const std::uint64_t* br = b.row(k);
      for (std::size_t x = 0; x < b.words(); ++x) out[x] |= br[x];
    }
  }
}

void check_shapes(const BoolMatrix& a, const BoolMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("boolean product shape mismatch");
}

BoolMatrix select(const BoolMatrix& m, std::span<const Vertex> rows, std::span<const Vertex> cols) {
  BoolMatrix out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      if (m.get(rows[i], cols[j])) out.set(i, j);
  return out;
}

}  // namespace

bool BoolMatrix::contained_in(const BoolMatrix& other) const {
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] & ~other.bits_[i]) return false;
  return true;
}

namespace serial {
BoolMatrix multiply(const BoolMatrix& a, const BoolMatrix& b) {
  check_shapes(a, b);
  BoolMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) multiply_row(a, b, c, i);
  return c;
}
}  // namespace serial

namespace parallel {
BoolMatrix multiply(const BoolMatrix& a, const BoolMatrix& b) {
  check_shapes(a, b);
  BoolMatrix c(a.rows(), b.cols());
  const auto rows = static_cast<std::ptrdiff_t>(a.rows());
#pragma omp parallel for schedule(static) if (a.rows() * a.cols() > 4096)
  for (std::ptrdiff_t i = 0; i < rows; ++i) multiply_row(a, b, c, static_cast<std::size_t>(i));
  return c;
}
}  // namespace parallel

TcParams resolve_tc_params(std::size_t n, TcParams p) {
  if (n == 0) throw std::invalid_argument("tc needs n >= 1");
  if (p.d == 0) p.d = (n + 1) / 2;
  if (p.h == 0) p.h = std::min(n, (12 * n + p.d - 1) / p.d);
  if (p.d < 1 || p.d > n || p.h < 1 || p.h > n) throw std::invalid_argument("tc parameters must satisfy 1 <= d, h <= n");
  // With h >= n - 1 the hop bound already covers every simple path.
  if (p.d * p.h < 6 * n && p.h + 1 < n) throw std::invalid_argument("tc parameters must satisfy d * h >= 6n");
  return p;
}

DynamicTc::DynamicTc(std::size_t n, const TcParams& params)
    : n_(n),
      params_(resolve_tc_params(n, params)),
      graph_(n),
      oracle_(HDistConfig{n, params_.h, params_.mode, params_.cap, params_.seed, true}) {
  diag_.n = n;
  diag_.params = params_;
  recompute();
}

const BoolMatrix& DynamicTc::vertex_update(std::span<const VertexPatch> patches) {
  if (patches.empty()) throw std::invalid_argument("a vertex update needs at least one patch");
  for (const VertexPatch& p : patches) {
    check_vertex(n_, p.v);
    for (Vertex w : p.out) check_vertex(n_, w);
    for (Vertex w : p.in) check_vertex(n_, w);
  }
  for (const VertexPatch& p : patches) graph_.apply_patch(p);
  oracle_.vertex_batch_update(patches);
  recompute();
  ++diag_.rounds;
  return closure_;
}

void DynamicTc::recompute() {
  const std::size_t h = params_.h;
  a_ = BoolMatrix(n_, n_);
  oracle_.for_each_maintained([&](Vertex s, Vertex t, Dist d) {
    if (d != kInfDist && static_cast<std::size_t>(d) <= h) a_.set(s, t);
  });

  if (params_.d * h >= 6 * n_) {
    weak_ = weak_hitting_set(graph_, h, params_.d);
  } else {
    weak_ = WeakHittingSet{};
  }
  const auto& hs = weak_.hitting;
  diag_.hitting_size = hs.size();
  diag_.blocks = weak_.partition.count();
  diag_.ell = weak_.ell;

  closure_ = a_;
  auto mul = [this](const BoolMatrix& x, const BoolMatrix& y) {
    return params_.parallel ? parallel::multiply(x, y) : serial::multiply(x, y);
  };
  diag_.squarings = 0;
  diag_.fixed_point_at = 0;
  diag_.monotone_chain = true;
  if (!hs.empty()) {
    std::vector<Vertex> all(n_);
    for (Vertex v = 0; v < n_; ++v) all[v] = v;
    // A v (A[V,H] (A[H,H])^n A[H,V]), the power by ceil(log2 n) squarings.
    BoolMatrix m = select(a_, hs, hs);
    const std::size_t squarings = n_ <= 1 ? 0 : static_cast<std::size_t>(std::bit_width(n_ - 1));
    bool fixed = false;
    for (std::size_t j = 1; j <= squarings; ++j) {
      BoolMatrix next = mul(m, m);
      if (!m.contained_in(next)) diag_.monotone_chain = false;
      if (!fixed && next == m) {
        diag_.fixed_point_at = j;
        fixed = true;
      }
      m = std::move(next);
    }
    diag_.squarings = squarings;
    const BoolMatrix r = mul(mul(select(a_, all, hs), m), select(a_, hs, all));
    for (std::size_t i = 0; i < n_; ++i) {
      std::uint64_t* out = closure_.row(i);
      const std::uint64_t* add = r.row(i);
      for (std::size_t w = 0; w < closure_.words(); ++w) out[w] |= add[w];
    }
  }

  // Path reporting cache.
  scc_ = strongly_connected_components(graph_);
  const std::size_t k = scc_.count();
  cross_edge_.assign(k * k, {kNoVertex, kNoVertex});
  for (auto [u, v] : graph_.edges()) {
    const std::size_t cu = scc_.component[u], cv = scc_.component[v];
    if (cu != cv && cross_edge_[cu * k + cv].first == kNoVertex) cross_edge_[cu * k + cv] = {u, v};
  }
  const Digraph skeleton = scc_skeleton(graph_, scc_);
  skeleton_out_.assign(n_, {});
  for (auto [u, v] : skeleton.edges()) skeleton_out_[u].push_back(v);
}

std::vector<Vertex> DynamicTc::report_path(Vertex s, Vertex t) {
  check_vertex(n_, s);
  check_vertex(n_, t);
  if (!closure_.get(s, t)) throw std::invalid_argument("target is not reachable from source");
  std::uint64_t probes = 0;
  auto reach = [&](Vertex a, Vertex b) {
    ++probes;
    return closure_.get(a, b);
  };
  auto rep = [this](std::size_t c) { return scc_.members[c].front(); };

  // Greedy topological advance: the first later SCC reachable from the
  // current one that still reaches t is a direct successor.
  const std::size_t k = scc_.count();
  const std::size_t target = scc_.component[t];
  std::vector<std::size_t> chain{scc_.component[s]};
  for (std::size_t c = chain.back() + 1; chain.back() != target; ++c) {
    if (c > target) throw std::logic_error("closure and condensation disagree");
    if (reach(rep(chain.back()), rep(c)) && reach(rep(c), t)) chain.push_back(c);
  }
  diag_.last_report_probes = probes;

  std::vector<std::uint8_t> allowed(k, 0);
  for (std::size_t c : chain) allowed[c] = 1;
  std::vector<Vertex> bridge_to(n_, kNoVertex);
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    const auto [u, v] = cross_edge_[chain[i] * k + chain[i + 1]];
    if (u == kNoVertex) throw std::logic_error("missing condensation edge");
    bridge_to[u] = v;
  }
  // Graph search in the chain's SCCs of the skeleton plus the bridges.
  std::vector<Vertex> pred(n_, kNoVertex);
  std::vector<std::uint8_t> seen(n_, 0);
  std::deque<Vertex> queue{s};
  seen[s] = 1;
  auto visit = [&](Vertex u, Vertex v) {
    if (seen[v] || !allowed[scc_.component[v]]) return;
    seen[v] = 1;
    pred[v] = u;
    queue.push_back(v);
  };
  while (!queue.empty() && !seen[t]) {
    const Vertex u = queue.front();
    queue.pop_front();
    for (Vertex v : skeleton_out_[u]) visit(u, v);
    if (bridge_to[u] != kNoVertex) visit(u, bridge_to[u]);
  }
  if (!seen[t]) throw std::logic_error("no path inside the condensation chain");
  std::vector<Vertex> path;
  for (Vertex x = t; x != kNoVertex; x = pred[x]) path.push_back(x);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace dyngraph::tc
