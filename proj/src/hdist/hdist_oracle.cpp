#include "dyngraph/hdist/hdist_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dyngraph {

namespace {

algebra::Ring choose_ring(const HDistConfig& c) {
  if (c.mode == RingMode::kRandomized) return algebra::ring_randomized(c.seed);
  return algebra::ring_deterministic(c.n, static_cast<std::uint32_t>(c.h));
}

// (I - XA)^{-1} = sum_{k <= h} X^k A^k, one walk-count sweep per source.
template <class F>
detail::HDistEngine<F> make_engine(F field, const HDistConfig& c, const Digraph& g) {
  algebra::PolyRing<F> ring(std::move(field), c.h);
  auto inverse = algebra::PolyMatrix<F>::identity(ring, c.n);
  const auto edges = g.edges();
  if (!edges.empty()) {
    const auto& f = ring.field();
    using Elem = typename F::Elem;
    std::vector<Elem> cur(c.n), next(c.n);
    for (std::size_t s = 0; s < c.n; ++s) {
      std::fill(cur.begin(), cur.end(), f.zero());
      cur[s] = f.one();
      for (std::size_t k = 1; k <= c.h; ++k) {
        std::fill(next.begin(), next.end(), f.zero());
        for (auto [u, v] : edges)
          if (!f.is_zero(cur[u])) next[v] = f.add(next[v], cur[u]);
        cur.swap(next);
        for (std::size_t t = 0; t < c.n; ++t) inverse.at(s, t)[k] = cur[t];
      }
    }
  }
  auto inv = dyninv::DynInverse<F>::from_inverse(ring, std::move(inverse), c.cap);
  return {ring, std::move(inv)};
}

template <class F>
Dist to_dist(const algebra::PolyRing<F>& ring, const algebra::TruncPoly<F>& p) {
  const auto v = ring.valuation(p);
  return v ? static_cast<Dist>(*v) : kInfDist;
}

}  // namespace

std::size_t default_cap(std::size_t n) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n)))));
}

HDistOracle::HDistOracle(const HDistConfig& config) : HDistOracle(config, Digraph(config.n)) {}

HDistOracle::HDistOracle(const HDistConfig& config, const Digraph& initial)
    : config_(config),
      ring_([&] {
        if (config.n < 1 || config.h < 1 || config.h > config.n)
          throw std::invalid_argument("hdist requires 1 <= h <= n");
        if (config_.cap == 0) config_.cap = default_cap(config.n);
        return choose_ring(config_);
      }()),
      graph_(initial),
      engine_(ring_.fits_word() ? Engine(make_engine(algebra::WordField(ring_.word_modulus()), config_, initial))
                                : Engine(make_engine(algebra::BigField(ring_.modulus()), config_, initial))) {
  if (initial.num_vertices() != config_.n) throw std::invalid_argument("initial graph size mismatch");
  if (config_.all_pairs)
    std::visit(
        [&](auto& e) {
          for (std::size_t s = 0; s < config_.n; ++s)
            for (std::size_t t = 0; t < config_.n; ++t) e.inv.y_insert(s, t);
        },
        engine_);
}

void HDistOracle::edge_update(Vertex u, Vertex v, bool present) {
  if (u == v) throw std::invalid_argument("hdist edge update needs u != v");
  if (!graph_.set_edge(u, v, present)) return;
  std::visit(
      [&](auto& e) {
        const auto& f = e.ring.field();
        auto delta = e.ring.zero();
        delta[1] = present ? f.neg(f.one()) : f.one();
        e.inv.entry_update(u, v, delta);
      },
      engine_);
}

void HDistOracle::vertex_batch_update(std::span<const VertexPatch> patches) {
  if (patches.empty()) return;
  const std::size_t n = config_.n;
  Digraph next = graph_;
  std::vector<std::uint8_t> patched(n, 0);
  std::vector<Vertex> order;
  for (const VertexPatch& p : patches) {
    next.apply_patch(p);
    if (!patched[p.v]) order.push_back(p.v);
    patched[p.v] = 1;
  }
  // Row diffs for patched vertices, column diffs restricted to unpatched rows
  // so that no cell is counted twice.
  struct Column {
    bool row;  // true: U = e_v, V = diff; false: U = diff, V = e_v
    Vertex v;
    std::vector<std::pair<Vertex, int>> diff;
  };
  std::vector<Column> cols;
  for (Vertex v : order) {
    Column row{true, v, {}}, col{false, v, {}};
    for (Vertex w = 0; w < n; ++w) {
      const int dr = int(next.has_edge(v, w)) - int(graph_.has_edge(v, w));
      if (dr != 0) row.diff.emplace_back(w, dr);
      if (patched[w]) continue;
      const int dc = int(next.has_edge(w, v)) - int(graph_.has_edge(w, v));
      if (dc != 0) col.diff.emplace_back(w, dc);
    }
    if (!row.diff.empty()) cols.push_back(std::move(row));
    if (!col.diff.empty()) cols.push_back(std::move(col));
  }
  graph_ = std::move(next);
  if (cols.empty()) return;
  std::visit(
      [&](auto& e) {
        using F = std::decay_t<decltype(e.ring.field())>;
        const auto& f = e.ring.field();
        algebra::PolyMatrix<F> u(n, cols.size(), config_.h), vm(n, cols.size(), config_.h);
        for (std::size_t c = 0; c < cols.size(); ++c) {
          auto& unit = cols[c].row ? u : vm;
          auto& diff = cols[c].row ? vm : u;
          unit.at(cols[c].v, c)[0] = f.one();
          // M = I - XA, so an adjacency change d contributes -d X.
          for (auto [w, d] : cols[c].diff) diff.at(w, c)[1] = d > 0 ? f.neg(f.one()) : f.one();
        }
        e.inv.batch_update(u, vm);
      },
      engine_);
}

Dist HDistOracle::query(Vertex s, Vertex t) const {
  return std::visit([&](const auto& e) { return to_dist(e.ring, e.inv.y_value(s, t)); }, engine_);
}

Dist HDistOracle::y_insert(Vertex s, Vertex t) {
  return std::visit([&](auto& e) { return to_dist(e.ring, e.inv.y_insert(s, t)); }, engine_);
}

void HDistOracle::y_remove(Vertex s, Vertex t) {
  if (config_.all_pairs) return;
  std::visit([&](auto& e) { e.inv.y_remove(s, t); }, engine_);
}

void HDistOracle::y_clear() {
  if (config_.all_pairs) return;
  std::visit([](auto& e) { e.inv.y_clear(); }, engine_);
}

bool HDistOracle::maintained(Vertex s, Vertex t) const {
  return std::visit([&](const auto& e) { return e.inv.y_contains(s, t); }, engine_);
}

std::size_t HDistOracle::y_size() const {
  return std::visit([&](const auto& e) { return e.inv.y_size(); }, engine_);
}

Dist HDistOracle::pair_distance(Vertex s, Vertex t) const {
  return std::visit(
      [&](const auto& e) {
        if (e.inv.y_contains(s, t)) return to_dist(e.ring, e.inv.y_value(s, t));
        return to_dist(e.ring, e.inv.peek(s, t));
      },
      engine_);
}

std::vector<Dist> HDistOracle::source_distances(Vertex s) const {
  std::vector<Dist> out(config_.n);
  for (Vertex t = 0; t < config_.n; ++t) out[t] = pair_distance(s, t);
  return out;
}

bool HDistOracle::coefficient_nonzero(Vertex s, Vertex t, std::size_t k) const {
  if (k > config_.h) return false;
  return std::visit(
      [&](const auto& e) {
        const auto p = e.inv.y_contains(s, t) ? e.inv.y_value(s, t) : e.inv.peek(s, t);
        return !e.ring.field().is_zero(p[k]);
      },
      engine_);
}

std::size_t HDistOracle::low_rank_columns() const {
  return std::visit([](const auto& e) { return e.inv.low_rank_columns(); }, engine_);
}

}  // namespace dyngraph
