#include "dyngraph/sssp/dynamic_sssp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <queue>
#include <random>
#include <stdexcept>

#include "dyngraph/collection/build.hpp"
#include "dyngraph/hitting/hitting.hpp"

namespace dyngraph {

namespace {

std::size_t ceil_root(std::size_t n, double k) {
  auto r = static_cast<std::size_t>(std::ceil(std::pow(double(n), 1.0 / k) - 1e-9));
  return std::max<std::size_t>(1, r);
}

HDistConfig a_config(std::size_t n, const SsspParams& p) {
  HDistConfig c;
  c.n = n;
  c.h = p.h;
  c.mode = p.mode;
  c.cap = p.cap;
  c.seed = p.seed * 2 + 1;
  return c;
}

ReporterConfig t_config(std::size_t n, const SsspParams& p) {
  ReporterConfig c;
  c.n = n;
  c.h = p.h;
  c.block_size = p.b;
  c.variant = BlocksVariant::kBinarySearch;
  c.mode = p.mode;
  c.cap = p.cap;
  c.seed = p.seed * 2 + 2;
  return c;
}

}  // namespace

SsspParams resolve_sssp_params(std::size_t n, SsspParams p) {
  if (n == 0) throw std::invalid_argument("sssp needs n >= 1");
  if (p.h == 0) p.h = std::min(n, ceil_root(n, 3.0));
  if (p.delta == 0) p.delta = (n + 3) / 4;
  if (p.b == 0) p.b = (n + 1) / 2;
  if (p.cap == 0) p.cap = default_cap(n);
  auto in_range = [n](std::size_t x) { return x >= 1 && x <= n; };
  if (!in_range(p.h) || !in_range(p.delta) || !in_range(p.b) || !(p.tau >= 1.0 && p.tau <= double(n)))
    throw std::invalid_argument("sssp parameters must satisfy 1 <= h, tau, delta, b <= n");
  if (!(p.sample_constant > 0)) throw std::invalid_argument("sample constant must be positive");
  return p;
}

DynamicSssp::DynamicSssp(std::size_t n, const SsspParams& params)
    : n_(n),
      params_(resolve_sssp_params(n, params)),
      graph_(n),
      a_(a_config(n, params_)),
      t_(t_config(n, params_)),
      pc_(n),
      h_index_(n, -1),
      in_d_(n, 0) {
  diag_.n = n;
  diag_.params = params_;
  if (params_.tree_reporting) {
    SsspParams inner;
    inner.h = std::min(params_.tree_inner_h, 2 * n);
    inner.tau = std::min(params_.tau, double(2 * n));
    inner.mode = params_.mode;
    inner.seed = params_.seed * 7 + 3;
    inner.sample_constant = params_.sample_constant;
    inner.tree_reporting = false;
    tree_ = std::make_unique<BlocksReporter<DynamicSssp>>(
        Digraph(n), params_.b, BlocksVariant::kLinearScan, [&inner](const Digraph& g) {
          DynamicSssp s(g.num_vertices(), inner);
          for (auto [u, v] : g.edges()) s.update(u, v, true);
          ++inner.seed;
          return s;
        });
  }
  phase_init();
}

DynamicSssp::~DynamicSssp() = default;
DynamicSssp::DynamicSssp(DynamicSssp&&) noexcept = default;
DynamicSssp& DynamicSssp::operator=(DynamicSssp&&) noexcept = default;

const SsspDiagnostics& DynamicSssp::diagnostics() const {
  diag_.y_size = a_.y_size();
  diag_.congested = pc_.congested().size();
  diag_.affected_vertices = d_list_.size();
  diag_.affected_paths = pc_.affected_count();
  diag_.hitting_size = hitting_.size();
  diag_.collection_size = pc_.size();
  return diag_;
}

void DynamicSssp::phase_init() {
  const bool det = params_.mode == RingMode::kDeterministic;
  hitting_.clear();
  std::fill(h_index_.begin(), h_index_.end(), -1);
  psi_to_.clear();
  psi_from_.clear();
  if (det) {
    pc_ = build_collection_threshold(t_, params_.tau);
    // Hit every stored path with at least floor(h/2) edges.
    const std::size_t min_edges = params_.h / 2;
    std::vector<std::size_t> long_ids;
    std::vector<std::vector<Vertex>> family;
    for (std::size_t id = 0; id < pc_.size(); ++id)
      if (pc_.paths()[id].length() >= min_edges) {
        long_ids.push_back(id);
        family.push_back(pc_.paths()[id].vertices);
      }
    hitting_ = greedy_hitting_set(n_, family, min_edges + 1);
    std::sort(hitting_.begin(), hitting_.end());
    for (std::size_t i = 0; i < hitting_.size(); ++i) h_index_[hitting_[i]] = static_cast<std::int32_t>(i);
    psi_to_.assign(hitting_.size() * n_, {});
    psi_from_.assign(hitting_.size() * n_, {});
    for (std::size_t id : long_ids) {
      for (Vertex v : pc_.paths()[id].vertices)
        if (h_index_[v] >= 0) {
          pc_.set_representative(id, v);
          break;
        }
      psi_insert(id);
    }
  } else {
    const double m = params_.sample_constant * double(n_) / double(params_.h) * std::log(double(n_));
    const std::size_t size = std::min(n_, static_cast<std::size_t>(std::ceil(std::max(0.0, m))));
    std::vector<Vertex> ids(n_);
    std::iota(ids.begin(), ids.end(), Vertex{0});
    std::mt19937_64 rng(params_.seed ^ (0x9e3779b97f4a7c15ULL * (phase_ + 1)));
    std::shuffle(ids.begin(), ids.end(), rng);
    hitting_.assign(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(size));
    std::sort(hitting_.begin(), hitting_.end());
    pc_ = build_collection_randomized(t_, hitting_);
  }
  for (Vertex x : d_list_) in_d_[x] = 0;
  d_list_.clear();
  a_.y_clear();
  if (det)
    for (Vertex c : pc_.congested())
      for (Vertex v = 0; v < n_; ++v) {
        a_.y_insert(c, v);
        a_.y_insert(v, c);
      }
  diag_.phase_updates = 0;
  ++phase_;
}

void DynamicSssp::psi_insert(std::size_t id) {
  const StoredPath& p = pc_.paths()[id];
  if (p.beta == kNoVertex) return;
  const auto it = std::find(p.vertices.begin(), p.vertices.end(), p.beta);
  const Dist prefix = static_cast<Dist>(it - p.vertices.begin());
  const Dist suffix = static_cast<Dist>(p.length()) - prefix;
  psi_to_[psi_slot(p.beta, p.t)].emplace(suffix, static_cast<std::uint32_t>(id));
  psi_from_[psi_slot(p.beta, p.s)].emplace(prefix, static_cast<std::uint32_t>(id));
}

void DynamicSssp::psi_erase(std::size_t id) {
  const StoredPath& p = pc_.paths()[id];
  if (p.beta == kNoVertex) return;
  const auto it = std::find(p.vertices.begin(), p.vertices.end(), p.beta);
  const Dist prefix = static_cast<Dist>(it - p.vertices.begin());
  const Dist suffix = static_cast<Dist>(p.length()) - prefix;
  psi_to_[psi_slot(p.beta, p.t)].erase({suffix, static_cast<std::uint32_t>(id)});
  psi_from_[psi_slot(p.beta, p.s)].erase({prefix, static_cast<std::uint32_t>(id)});
}

void DynamicSssp::add_to_d(Vertex x) {
  in_d_[x] = 1;
  d_list_.push_back(x);
  for (Vertex v = 0; v < n_; ++v) {
    a_.y_insert(x, v);
    a_.y_insert(v, x);
  }
  for (auto [s, t] : pc_.mark_affected(x)) {
    a_.y_insert(s, t);
    psi_erase(pc_.id_of(s, t));
  }
}

void DynamicSssp::update(Vertex u, Vertex v, bool present) {
  check_vertex(n_, u);
  check_vertex(n_, v);
  if (u == v) throw std::invalid_argument("self-loops are not supported");
  ++diag_.updates;
  if (graph_.set_edge(u, v, present)) {
    a_.edge_update(u, v, present);
    t_.edge_update(u, v, present);
    if (tree_) tree_->edge_update(u, v, present);
    const std::size_t before = a_.y_size();
    std::uint64_t budget = 0;
    for (Vertex x : {u, v})
      if (!in_d_[x]) {
        budget += pc_.congestion(x) + 2 * n_;
        add_to_d(x);
      }
    const std::uint64_t growth = a_.y_size() - before;
    diag_.max_y_growth = std::max(diag_.max_y_growth, growth);
    if (growth > budget) ++diag_.y_growth_violations;
  }
  if (++diag_.phase_updates == params_.delta) {
    phase_init();
    ++diag_.rollovers;
  }
}

std::vector<Dist> DynamicSssp::dijkstra(Vertex s, std::vector<Parent>* parents) {
  check_vertex(n_, s);
  ++diag_.queries;
  // Y_s: insert the missing pairs of {s} x V, remove them afterwards.
  std::vector<Vertex> temp;
  for (Vertex t = 0; t < n_; ++t)
    if (!a_.maintained(s, t)) {
      a_.y_insert(s, t);
      temp.push_back(t);
    }
  std::vector<std::vector<XEdge>> adj(n_);
  std::uint64_t edges = 0;
  a_.for_each_maintained([&](Vertex u, Vertex v, Dist d) {
    if (u == v || d == kInfDist) return;
    adj[u].push_back({v, d, 0, 0});
    ++edges;
  });
  for (Vertex t : temp) a_.y_remove(s, t);
  if (params_.mode == RingMode::kDeterministic) {
    for (std::size_t i = 0; i < hitting_.size(); ++i) {
      const Vertex z = hitting_[i];
      for (Vertex v = 0; v < n_; ++v) {
        const PsiSet& to = psi_to_[i * n_ + v];
        if (!to.empty() && v != z) {
          adj[z].push_back({v, to.begin()->first, 1, to.begin()->second});
          ++edges;
        }
        const PsiSet& from = psi_from_[i * n_ + v];
        if (!from.empty() && v != z) {
          adj[v].push_back({z, from.begin()->first, 2, from.begin()->second});
          ++edges;
        }
      }
    }
  } else {
    for (std::size_t id = 0; id < pc_.size(); ++id) {
      const StoredPath& p = pc_.paths()[id];
      if (p.affected) continue;
      adj[p.s].push_back({p.t, static_cast<Dist>(p.length()), 3, static_cast<std::uint32_t>(id)});
      ++edges;
    }
  }
  diag_.x_edges_last_query = edges;

  std::vector<Dist> dist(n_, kInfDist);
  if (parents) parents->assign(n_, Parent{});
  using Item = std::pair<Dist, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[s] = 0;
  pq.emplace(0, s);
  while (!pq.empty()) {
    const auto [d, u] = pq.top();
    pq.pop();
    if (d != dist[u]) continue;
    for (const XEdge& e : adj[u]) {
      const Dist nd = d + e.w;
      if (nd < dist[e.to]) {
        dist[e.to] = nd;
        if (parents) (*parents)[e.to] = {u, e};
        pq.emplace(nd, e.to);
      }
    }
  }
  return dist;
}

std::vector<Dist> DynamicSssp::query(Vertex s) { return dijkstra(s, nullptr); }

PathTree DynamicSssp::tree_query(Vertex s) {
  if (!tree_) throw std::logic_error("tree reporting is disabled");
  check_vertex(n_, s);
  return tree_->tree_from(s);
}

std::vector<Vertex> DynamicSssp::witness(Vertex u, Vertex v, Dist d) const {
  // Each step moves to an out-neighbour one hop closer under delta^h.
  std::vector<Vertex> walk{u};
  Vertex cur = u;
  for (Dist rem = d; rem > 0; --rem) {
    Vertex next = kNoVertex;
    for (Vertex w : graph_.out_neighbors(cur))
      if (a_.pair_distance(w, v) == rem - 1) {
        next = w;
        break;
      }
    if (next == kNoVertex) return {};
    walk.push_back(next);
    cur = next;
  }
  return walk;
}

std::vector<Vertex> DynamicSssp::expand_path(Vertex s, Vertex t) {
  check_vertex(n_, t);
  std::vector<Parent> parents;
  const auto dist = dijkstra(s, &parents);
  if (dist[t] == kInfDist) return {};
  std::vector<std::pair<Vertex, XEdge>> chain;
  for (Vertex x = t; x != s; x = parents[x].from) chain.emplace_back(parents[x].from, parents[x].edge);
  std::reverse(chain.begin(), chain.end());
  std::vector<Vertex> walk{s};
  for (const auto& [from, e] : chain) {
    std::vector<Vertex> piece;
    if (e.kind == 0) {
      piece = witness(from, e.to, e.w);
    } else {
      const auto& verts = pc_.paths()[e.path].vertices;
      if (e.kind == 3) {
        piece = verts;
      } else {
        const Vertex z = pc_.paths()[e.path].beta;
        const auto it = std::find(verts.begin(), verts.end(), z);
        piece = e.kind == 1 ? std::vector<Vertex>(it, verts.end()) : std::vector<Vertex>(verts.begin(), it + 1);
      }
    }
    if (piece.empty() || piece.front() != from || piece.back() != e.to) return {};
    walk.insert(walk.end(), piece.begin() + 1, piece.end());
  }
  return walk;
}

bool DynamicSssp::psi_consistent() const {
  if (params_.mode != RingMode::kDeterministic) return true;
  std::vector<Dist> to(hitting_.size() * n_, kInfDist), from(hitting_.size() * n_, kInfDist);
  for (const StoredPath& p : pc_.paths()) {
    if (p.affected || p.beta == kNoVertex) continue;
    const auto it = std::find(p.vertices.begin(), p.vertices.end(), p.beta);
    const Dist prefix = static_cast<Dist>(it - p.vertices.begin());
    Dist& a = to[psi_slot(p.beta, p.t)];
    a = std::min(a, static_cast<Dist>(p.length()) - prefix);
    Dist& b = from[psi_slot(p.beta, p.s)];
    b = std::min(b, prefix);
  }
  for (std::size_t i = 0; i < to.size(); ++i) {
    const Dist ta = psi_to_[i].empty() ? kInfDist : psi_to_[i].begin()->first;
    const Dist fa = psi_from_[i].empty() ? kInfDist : psi_from_[i].begin()->first;
    if (ta != to[i] || fa != from[i]) return false;
  }
  return true;
}

bool DynamicSssp::y_consistent() const {
  std::vector<std::uint8_t> want(n_ * n_, 0);
  auto mark_row_col = [&](Vertex x) {
    for (Vertex v = 0; v < n_; ++v) want[std::size_t{x} * n_ + v] = want[std::size_t{v} * n_ + x] = 1;
  };
  for (Vertex x : d_list_) mark_row_col(x);
  if (params_.mode == RingMode::kDeterministic)
    for (Vertex c : pc_.congested()) mark_row_col(c);
  for (const StoredPath& p : pc_.paths())
    if (p.affected) want[std::size_t{p.s} * n_ + p.t] = 1;
  std::size_t count = 0;
  bool ok = true;
  a_.for_each_maintained([&](Vertex s, Vertex t, Dist) {
    ++count;
    ok = ok && want[std::size_t{s} * n_ + t];
  });
  return ok && count == static_cast<std::size_t>(std::count(want.begin(), want.end(), std::uint8_t{1}));
}

}  // namespace dyngraph
