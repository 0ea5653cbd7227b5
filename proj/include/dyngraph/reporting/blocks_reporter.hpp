#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dyngraph/graph/digraph.hpp"
#include "dyngraph/graph/types.hpp"

namespace dyngraph {

enum class BlocksVariant {
  kLinearScan,    // single-source queries on every level
  kBinarySearch,  // one source oracle plus pair queries, O(log q) levels per pair
};

struct PredecessorAnswer {
  Vertex pred = kNoVertex;
  Dist dist = kInfDist;
};

struct BlocksDiagnostics {
  std::uint64_t pair_probes = 0;
  std::uint64_t source_probes = 0;
  std::uint64_t monotonicity_violations = 0;
  std::uint64_t inconsistencies = 0;  // distance answers that admit no predecessor
};

// Predecessor reporting from distance oracles. Level i (0-based) is the graph
// G_i on 2n vertices: the original vertices plus copies n + v, where u -> n + v
// exists iff u -> v is an edge and block(u) <= i. The first level at which
// delta(s, n + t) drops to delta(s, t) names the block containing the
// predecessor. Oracle must provide edge_update, vertex_batch_update,
// pair_distance and source_distances.
template <class Oracle>
class BlocksReporter {
 public:
  // factory(initial graph) builds an oracle over the vertex count of that graph.
  using Factory = std::function<Oracle(const Digraph&)>;

  BlocksReporter(const Digraph& initial, std::size_t block_size, BlocksVariant variant, const Factory& make)
      : n_(initial.num_vertices()), b_(block_size), variant_(variant), graph_(initial) {
    if (n_ == 0) throw std::invalid_argument("blocks reporter needs n >= 1");
    if (b_ == 0 || b_ > n_) b_ = n_;
    q_ = (n_ + b_ - 1) / b_;
    if (variant_ == BlocksVariant::kBinarySearch) source_.emplace(make(initial));
    levels_.reserve(q_);
    for (std::size_t i = 0; i < q_; ++i) levels_.push_back(make(level_graph(i)));
  }

  std::size_t num_vertices() const { return n_; }
  std::size_t block_size() const { return b_; }
  std::size_t num_blocks() const { return q_; }
  std::size_t block_of(Vertex v) const { return v / b_; }
  BlocksVariant variant() const { return variant_; }
  const Digraph& graph() const { return graph_; }
  const Oracle& level(std::size_t i) const { return levels_[i]; }
  const BlocksDiagnostics& diagnostics() const { return diag_; }

  // G_i for level i, built from the current graph.
  Digraph level_graph(std::size_t i) const {
    Digraph g(2 * n_);
    for (auto [u, v] : graph_.edges()) {
      g.set_edge(u, v, true);
      if (block_of(u) <= i) g.set_edge(u, static_cast<Vertex>(n_ + v), true);
    }
    return g;
  }

  void edge_update(Vertex u, Vertex v, bool present) {
    check_vertex(n_, u);
    check_vertex(n_, v);
    if (!graph_.set_edge(u, v, present)) return;
    if (source_) source_->edge_update(u, v, present);
    const std::size_t first = block_of(u);
#pragma omp parallel for schedule(dynamic) if (q_ > 1)
    for (std::size_t i = 0; i < q_; ++i) {
      levels_[i].edge_update(u, v, present);
      if (i >= first) levels_[i].edge_update(u, static_cast<Vertex>(n_ + v), present);
    }
  }

  void vertex_batch_update(std::span<const VertexPatch> patches) {
    if (patches.empty()) return;
    for (const VertexPatch& p : patches) {
      check_vertex(n_, p.v);
      graph_.apply_patch(p);
    }
    if (source_) source_->vertex_batch_update(patches);
#pragma omp parallel for schedule(dynamic) if (q_ > 1)
    for (std::size_t i = 0; i < q_; ++i) {
      std::vector<VertexPatch> lifted;
      lifted.reserve(2 * patches.size());
      for (const VertexPatch& p : patches) {
        VertexPatch orig{p.v, p.out, p.in};
        if (block_of(p.v) <= i)
          for (Vertex w : p.out) orig.out.push_back(static_cast<Vertex>(n_ + w));
        VertexPatch copy{static_cast<Vertex>(n_ + p.v), {}, {}};
        for (Vertex w : p.in)
          if (block_of(w) <= i) copy.in.push_back(w);
        lifted.push_back(std::move(orig));
        lifted.push_back(std::move(copy));
      }
      levels_[i].vertex_batch_update(lifted);
    }
  }

  // Answers aligned with `pairs`; every pair's source must be listed in `sources`.
  std::vector<PredecessorAnswer> submatrix_predecessors(std::span<const Vertex> sources,
                                                       std::span<const std::pair<Vertex, Vertex>> pairs) {
    std::vector<std::size_t> slot(n_, SIZE_MAX);
    for (std::size_t k = 0; k < sources.size(); ++k) {
      check_vertex(n_, sources[k]);
      slot[sources[k]] = k;
    }
    // Distances in G from every source; the linear-scan variant also keeps
    // the copy distances of every level.
    std::vector<std::vector<Dist>> base(sources.size());
    std::vector<std::vector<std::vector<Dist>>> copies(variant_ == BlocksVariant::kLinearScan ? sources.size() : 0);
    for (std::size_t k = 0; k < sources.size(); ++k) {
      if (variant_ == BlocksVariant::kBinarySearch) {
        base[k] = source_->source_distances(sources[k]);
        ++diag_.source_probes;
      } else {
        copies[k].resize(q_);
        for (std::size_t i = 0; i < q_; ++i) {
          auto all = levels_[i].source_distances(sources[k]);
          ++diag_.source_probes;
          copies[k][i].assign(all.begin() + static_cast<std::ptrdiff_t>(n_), all.end());
          if (i + 1 == q_) base[k].assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n_));
        }
      }
    }

    std::vector<PredecessorAnswer> out(pairs.size());
    for (std::size_t idx = 0; idx < pairs.size(); ++idx) {
      const auto [s, t] = pairs[idx];
      check_vertex(n_, t);
      if (s >= n_ || slot[s] == SIZE_MAX) throw std::invalid_argument("pair source not in S");
      const std::size_t k = slot[s];
      const Dist target = base[k][t];
      out[idx].dist = target;
      if (target == kInfDist || s == t) continue;
      const std::size_t level = variant_ == BlocksVariant::kBinarySearch ? search_level(s, t, target)
                                                                         : scan_level(copies[k], t, target);
      out[idx].pred = pick(base[k], t, target, level);
      if (out[idx].pred == kNoVertex) {
        ++diag_.inconsistencies;
        for (std::size_t i = 0; i < q_ && out[idx].pred == kNoVertex; ++i) out[idx].pred = pick(base[k], t, target, i);
      }
    }
    return out;
  }

  PathTree tree_from(Vertex s) {
    std::vector<std::pair<Vertex, Vertex>> pairs;
    pairs.reserve(n_);
    for (Vertex t = 0; t < n_; ++t) pairs.emplace_back(s, t);
    const Vertex src[1] = {s};
    const auto ans = submatrix_predecessors(src, pairs);
    PathTree tree{s, std::vector<Vertex>(n_, kNoVertex), std::vector<Dist>(n_, kInfDist)};
    for (Vertex t = 0; t < n_; ++t) {
      tree.pred[t] = ans[t].pred;
      tree.dist[t] = ans[t].dist;
    }
    return tree;
  }

 private:
  std::size_t scan_level(const std::vector<std::vector<Dist>>& copy, Vertex t, Dist target) const {
    for (std::size_t i = 0; i < q_; ++i)
      if (copy[i][t] == target) return i;
    return q_ - 1;
  }

  // Smallest level i with delta_{G_i}(s, t') == target; the chain is
  // non-increasing in i and reaches target at the last level.
  std::size_t search_level(Vertex s, Vertex t, Dist target) {
    const Vertex tc = static_cast<Vertex>(n_ + t);
    std::size_t lo = 0, hi = q_ - 1;
    std::vector<std::pair<std::size_t, Dist>> probes;
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      const Dist d = levels_[mid].pair_distance(s, tc);
      ++diag_.pair_probes;
      probes.emplace_back(mid, d);
      if (d <= target)
        hi = mid;
      else
        lo = mid + 1;
    }
    probes.emplace_back(q_ - 1, target);
    for (auto [i, di] : probes) {
      if (di < target) ++diag_.monotonicity_violations;
      for (auto [j, dj] : probes)
        if (i < j && di < dj) ++diag_.monotonicity_violations;
    }
    return lo;
  }

  Vertex pick(const std::vector<Dist>& dist, Vertex t, Dist target, std::size_t level) const {
    const std::size_t begin = level * b_, end = std::min(n_, begin + b_);
    for (std::size_t p = begin; p < end; ++p)
      if (graph_.has_edge(static_cast<Vertex>(p), t) && dist[p] != kInfDist && dist[p] + 1 == target)
        return static_cast<Vertex>(p);
    return kNoVertex;
  }

  std::size_t n_, b_, q_ = 0;
  BlocksVariant variant_;
  Digraph graph_;
  std::optional<Oracle> source_;
  std::vector<Oracle> levels_;
  BlocksDiagnostics diag_;
};

}  // namespace dyngraph
