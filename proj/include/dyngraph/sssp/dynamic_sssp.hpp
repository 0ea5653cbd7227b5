#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <utility>
#include <vector>

#include "dyngraph/collection/path_collection.hpp"
#include "dyngraph/graph/digraph.hpp"
#include "dyngraph/hdist/hdist_oracle.hpp"
#include "dyngraph/reporting/blocks_reporter.hpp"
#include "dyngraph/reporting/switch_reporter.hpp"

namespace dyngraph {

// Zero fields select the defaults h = ceil(n^{1/3}), delta = ceil(n/4),
// b = ceil(n/2), cap = ceil(sqrt(n)).
struct SsspParams {
  std::size_t h = 0;
  double tau = 2.0;
  std::size_t delta = 0;
  std::size_t b = 0;
  std::size_t cap = 0;
  RingMode mode = RingMode::kDeterministic;
  std::uint64_t seed = 0;
  double sample_constant = 4.0;  // |H| = min(n, ceil(c (n/h) ln n)) in randomized mode
  bool tree_reporting = false;
  std::size_t tree_inner_h = 2;  // hop bound of the distance structures under the tree reporter
};

SsspParams resolve_sssp_params(std::size_t n, SsspParams p);

struct SsspDiagnostics {
  std::size_t n = 0;
  SsspParams params;
  std::uint64_t updates = 0;
  std::uint64_t phase_updates = 0;
  std::uint64_t rollovers = 0;
  std::uint64_t queries = 0;
  std::size_t y_size = 0;
  std::size_t congested = 0;
  std::size_t affected_vertices = 0;
  std::size_t affected_paths = 0;
  std::size_t hitting_size = 0;
  std::size_t collection_size = 0;
  std::uint64_t max_y_growth = 0;
  std::uint64_t y_growth_violations = 0;  // growth above sum over new D vertices of alpha(x) + 2n
  std::uint64_t x_edges_last_query = 0;
};

// Fully dynamic exact single-source distances on an unweighted digraph, in
// phases of delta edge updates. Queries run Dijkstra on an auxiliary graph
// X built from maintained h-bounded distances and the phase's path
// collection.
class DynamicSssp {
 public:
  DynamicSssp(std::size_t n, const SsspParams& params = {});
  ~DynamicSssp();
  DynamicSssp(DynamicSssp&&) noexcept;
  DynamicSssp& operator=(DynamicSssp&&) noexcept;

  std::size_t num_vertices() const { return n_; }
  const SsspParams& params() const { return params_; }
  const Digraph& graph() const { return graph_; }
  const SsspDiagnostics& diagnostics() const;

  void update(Vertex u, Vertex v, bool present);
  std::vector<Dist> query(Vertex s);
  // Shortest path tree from s via the blocks reduction over G_1..G_q;
  // requires tree_reporting.
  PathTree tree_query(Vertex s);

  // The walk in G realizing delta(s, t) through X: stored subpaths for
  // collection edges and hop-by-hop witnesses for maintained distances.
  // Empty when t is unreachable.
  std::vector<Vertex> expand_path(Vertex s, Vertex t);

  // Recomputes every Psi minimum from the collection and compares.
  bool psi_consistent() const;
  // Checks the Y contents against the phase definition.
  bool y_consistent() const;

  // Phase internals, exposed for tests only.
  const PathCollection& collection() const { return pc_; }
  const std::vector<Vertex>& hitting_set() const { return hitting_; }
  const std::vector<Vertex>& affected_vertices() const { return d_list_; }

  // Blocks reporter interface.
  void edge_update(Vertex u, Vertex v, bool present) { update(u, v, present); }
  std::vector<Dist> source_distances(Vertex s) { return query(s); }
  Dist pair_distance(Vertex s, Vertex t) { return query(s)[t]; }

 private:
  struct XEdge {
    Vertex to;
    Dist w;
    std::uint8_t kind;  // 0: maintained distance, 1: rep to target, 2: source to rep, 3: stored path
    std::uint32_t path;
  };
  struct Parent {
    Vertex from = kNoVertex;
    XEdge edge{};
  };
  using PsiSet = std::set<std::pair<Dist, std::uint32_t>>;

  void phase_init();
  void add_to_d(Vertex x);
  std::size_t psi_slot(Vertex z, Vertex v) const { return std::size_t(h_index_[z]) * n_ + v; }
  void psi_insert(std::size_t id);
  void psi_erase(std::size_t id);
  std::vector<Dist> dijkstra(Vertex s, std::vector<Parent>* parents);
  std::vector<Vertex> witness(Vertex u, Vertex v, Dist d) const;

  std::size_t n_;
  SsspParams params_;
  Digraph graph_;
  HDistOracle a_;
  SwitchReporter t_;
  PathCollection pc_;
  std::vector<Vertex> hitting_;
  std::vector<std::int32_t> h_index_;
  std::vector<PsiSet> psi_to_, psi_from_;
  std::vector<std::uint8_t> in_d_;
  std::vector<Vertex> d_list_;
  std::uint64_t phase_ = 0;
  mutable SsspDiagnostics diag_;
  std::unique_ptr<BlocksReporter<DynamicSssp>> tree_;
};

}  // namespace dyngraph
