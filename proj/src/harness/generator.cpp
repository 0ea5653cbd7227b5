#include "dyngraph/harness/generator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace dyngraph::harness {

namespace {

class Builder {
 public:
  Builder(const GenProfile& p) : p_(p), g_(p.n), rng_(p.seed * 0x9e3779b97f4a7c15ULL + 17) {
    trace_.n = p.n;
    trace_.structure = p.structure;
    trace_.seed = p.seed;
    trace_.has_seed = true;
    target_edges_ = static_cast<std::size_t>(std::llround(p.density * double(p.n) * double(p.n - 1)));
  }

  std::mt19937_64& rng() { return rng_; }
  const Digraph& graph() const { return g_; }
  std::size_t updates() const { return updates_; }
  bool under_target() const { return g_.edge_count() < target_edges_; }

  Vertex any_vertex() { return static_cast<Vertex>(rng_() % p_.n); }

  bool insert_random() {
    if (g_.edge_count() >= p_.n * (p_.n - 1)) return false;
    for (;;) {
      const Vertex u = any_vertex(), v = any_vertex();
      if (u != v && !g_.has_edge(u, v)) {
        edge(u, v, true);
        return true;
      }
    }
  }

  bool delete_random() {
    if (g_.edge_count() == 0) return false;
    const auto edges = g_.edges();
    const auto [u, v] = edges[rng_() % edges.size()];
    edge(u, v, false);
    return true;
  }

  void random_step(double insert_bias) {
    std::bernoulli_distribution coin(insert_bias);
    if (coin(rng_)) {
      if (!insert_random()) delete_random();
    } else if (!delete_random()) {
      insert_random();
    }
  }

  void edge(Vertex u, Vertex v, bool present) {
    g_.set_edge(u, v, present);
    Event e;
    e.kind = EventKind::kEdge;
    e.u = u;
    e.v = v;
    e.present = present;
    trace_.events.push_back(e);
    after_update();
  }

  VertexPatch random_patch(Vertex v) {
    std::bernoulli_distribution coin(p_.density);
    VertexPatch patch;
    patch.v = v;
    for (Vertex w = 0; w < p_.n; ++w) {
      if (w == patch.v) continue;
      if (coin(rng_)) patch.out.push_back(w);
      if (coin(rng_)) patch.in.push_back(w);
    }
    return patch;
  }

  void patch(VertexPatch patch) {
    g_.apply_patch(patch);
    Event e;
    e.kind = EventKind::kPatch;
    e.patch = std::move(patch);
    trace_.events.push_back(std::move(e));
    after_update();
  }

  void marker(EventKind kind) {
    Event e;
    e.kind = kind;
    trace_.events.push_back(e);
  }

  void query_block() {
    const std::string& s = p_.structure;
    auto q = [&](EventKind kind, Vertex u, Vertex v = kNoVertex) {
      Event e;
      e.kind = kind;
      e.u = u;
      e.v = v;
      trace_.events.push_back(e);
    };
    if (s == "hdist") {
      q(EventKind::kQuerySssp, any_vertex());
      for (std::size_t i = 0; i < p_.n; ++i) q(EventKind::kQueryDist, any_vertex(), any_vertex());
      return;
    }
    if (s == "tc") {
      q(EventKind::kQueryTc, kNoVertex);
    } else {
      for (Vertex v = 0; v < p_.n; ++v) q(EventKind::kQuerySssp, v);
      if (s == "apsp") q(EventKind::kQueryTrees, kNoVertex);
    }
    for (std::size_t i = 0; i < p_.path_queries; ++i) q(EventKind::kQueryPath, any_vertex(), any_vertex());
  }

  Trace finish() { return std::move(trace_); }

 private:
  void after_update() {
    ++updates_;
    if (p_.query_every && updates_ % p_.query_every == 0 && !in_batch_) query_block();
  }

 public:
  bool in_batch_ = false;

 private:
  const GenProfile& p_;
  Digraph g_;
  std::mt19937_64 rng_;
  Trace trace_;
  std::size_t target_edges_ = 0;
  std::size_t updates_ = 0;
};

std::size_t default_delta(std::size_t n) { return (n + 3) / 4; }

std::size_t default_h(std::size_t n) {
  std::size_t h = 1;
  while (h * h * h < n) ++h;
  return h;
}

}  // namespace

const std::vector<std::string>& profile_names() {
  static const std::vector<std::string> names{"random", "delete-heavy", "phase-aligned", "hub", "vertex"};
  return names;
}

std::vector<std::uint64_t> tree_congestion(const Digraph& g, std::size_t h) {
  const std::size_t n = g.num_vertices();
  std::vector<std::uint64_t> alpha(n, 0);
  std::vector<Vertex> order(n);
  std::vector<std::uint64_t> sub(n);
  for (Vertex s = 0; s < n; ++s) {
    const PathTree tree = bfs_tree(g, s, static_cast<int>(h));
    for (Vertex v = 0; v < n; ++v) order[v] = v;
    std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return tree.dist[a] > tree.dist[b]; });
    std::fill(sub.begin(), sub.end(), 0);
    for (Vertex v : order) {
      if (tree.dist[v] == kInfDist || v == s) continue;
      sub[v] += 1;
      alpha[v] += sub[v];
      sub[tree.pred[v]] += sub[v];
    }
    alpha[s] += sub[s];
  }
  return alpha;
}

Vertex hub_vertex(const Digraph& g, std::size_t h) {
  const auto alpha = tree_congestion(g, h);
  return static_cast<Vertex>(std::max_element(alpha.begin(), alpha.end()) - alpha.begin());
}

Trace gen_trace(const GenProfile& p) {
  if (p.n < 2) throw std::invalid_argument("generator needs n >= 2");
  if (p.density < 0 || p.density > 1) throw std::invalid_argument("density must lie in [0, 1]");
  const auto& names = profile_names();
  if (std::find(names.begin(), names.end(), p.name) == names.end())
    throw std::invalid_argument("unknown profile '" + p.name + "'");
  const std::size_t delta = p.delta ? p.delta : default_delta(p.n);
  const std::size_t h = p.h ? p.h : default_h(p.n);
  Builder b(p);

  if (p.name == "random") {
    while (b.updates() < p.steps) b.random_step(b.under_target() ? 0.7 : 0.3);
  } else if (p.name == "delete-heavy") {
    // A quarter of inserts to build up edges, then mostly deletions.
    while (b.updates() < p.steps / 4) {
      if (!b.insert_random()) b.delete_random();
    }
    while (b.updates() < p.steps) b.random_step(0.2);
  } else if (p.name == "phase-aligned") {
    // Deletion bursts right at each phase boundary, around the most loaded
    // vertex, with a query block on both sides.
    while (b.updates() < p.steps) {
      if (b.updates() % delta == 0 && b.updates() > 0) {
        b.query_block();
        const Vertex hub = hub_vertex(b.graph(), h);
        auto out = b.graph().out_neighbors(hub);
        for (std::size_t i = 0; i < out.size() && i < 3 && b.updates() < p.steps; ++i) b.edge(hub, out[i], false);
        if (b.updates() % delta == 0) b.random_step(0.5);
        b.query_block();
        continue;
      }
      b.random_step(b.under_target() ? 0.7 : 0.3);
    }
  } else if (p.name == "hub") {
    // Each phase deletes the edges of the most congested vertex first.
    while (b.updates() < p.steps) {
      const Vertex hub = hub_vertex(b.graph(), h);
      std::vector<std::pair<Vertex, Vertex>> incident;
      for (Vertex w : b.graph().out_neighbors(hub)) incident.emplace_back(hub, w);
      for (Vertex w : b.graph().in_neighbors(hub)) incident.emplace_back(w, hub);
      const std::size_t phase_end = b.updates() + delta;
      for (auto [u, v] : incident) {
        if (b.updates() >= std::min(phase_end, p.steps)) break;
        b.edge(u, v, false);
      }
      while (b.updates() < std::min(phase_end, p.steps)) b.random_step(b.under_target() ? 0.8 : 0.4);
    }
  } else {  // vertex
    while (b.updates() < p.steps) {
      const std::size_t k = std::min<std::size_t>(1 + b.rng()() % 3, p.steps - b.updates());
      if (k > 1) {
        b.marker(EventKind::kBatchBegin);
        b.in_batch_ = true;
      }
      const std::size_t before = b.updates();
      // Distinct vertices within a batch.
      std::vector<Vertex> picked;
      while (picked.size() < k) {
        const Vertex v = b.any_vertex();
        if (std::find(picked.begin(), picked.end(), v) == picked.end()) picked.push_back(v);
      }
      for (Vertex v : picked) b.patch(b.random_patch(v));
      if (k > 1) {
        b.marker(EventKind::kBatchEnd);
        b.in_batch_ = false;
        // A query block the batch skipped over.
        if (p.query_every && before / p.query_every != b.updates() / p.query_every) b.query_block();
      }
    }
  }
  return b.finish();
}

}  // namespace dyngraph::harness
