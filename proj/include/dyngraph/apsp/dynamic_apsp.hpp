#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dyngraph/apsp/minplus.hpp"
#include "dyngraph/collection/path_collection.hpp"
#include "dyngraph/graph/digraph.hpp"
#include "dyngraph/reporting/switch_reporter.hpp"

namespace dyngraph::apsp {

// Zero fields select h = ceil(n^{1/3}), delta = ceil(n/4), b = ceil(n/2),
// cap = ceil(sqrt(n)).
struct ApspParams {
  std::size_t h = 0;
  double tau = 2.0;
  std::size_t delta = 0;
  std::size_t b = 0;
  std::size_t cap = 0;
  RingMode mode = RingMode::kDeterministic;
  std::uint64_t seed = 0;
  double eps = 0.5;
  double eps_constant = 4.0;  // eps' = eps / (c ceil(log2 n))
  Rounding rounding = Rounding::kScaled;
  InnerKernel kernel = InnerKernel::kNaive;
  bool parallel = true;
  bool all_hitting = false;  // X = V
};

ApspParams resolve_apsp_params(std::size_t n, ApspParams p);

// Pointer representation of the product paths: a node is a base path or the
// concatenation of two earlier nodes.
class PathDag {
 public:
  static constexpr std::int32_t kNone = -1;

  void clear();
  std::int32_t leaf(std::vector<Vertex> path);
  std::int32_t concat(std::int32_t left, std::int32_t right);
  std::size_t size() const { return nodes_.size(); }
  // Appends the node's vertices, sharing joints; counts visited nodes.
  void expand(std::int32_t node, std::vector<Vertex>& out, std::uint64_t& probes) const;

 private:
  struct Node {
    std::int32_t left = kNone, right = kNone;  // both kNone for a leaf
    std::uint32_t leaf = 0;
  };
  std::vector<Node> nodes_;
  std::vector<std::vector<Vertex>> leaves_;
};

enum class RebuiltTag : std::uint8_t { kNone, kTrivial, kCopied, kExtended };

struct ApspDiagnostics {
  std::size_t n = 0;
  ApspParams params;
  std::uint64_t rounds = 0;
  std::uint64_t rollovers = 0;
  std::uint64_t phase_updates = 0;
  std::size_t y_size = 0;
  std::size_t x_size = 0;
  std::size_t congested = 0;
  std::size_t affected_vertices = 0;
  std::size_t hitting_size = 0;
  std::uint64_t products = 0;
  std::size_t depth = 0;  // nesting depth of approximate products
  double eps_prime = 0;
  double guaranteed_ratio = 1;  // (1 + eps')^depth
  std::size_t dag_nodes = 0;
  std::uint64_t last_report_probes = 0;
};

// Fully dynamic (1 + eps)-approximate APSP under vertex updates.
class DynamicApsp {
 public:
  DynamicApsp(std::size_t n, const ApspParams& params = {});

  std::size_t num_vertices() const { return n_; }
  const ApspParams& params() const { return params_; }
  const Digraph& graph() const { return graph_; }
  const ApspDiagnostics& diagnostics() const { return diag_; }

  // Applies one round of patches and returns the estimate matrix (row major).
  const std::vector<double>& vertex_update(std::span<const VertexPatch> patches);
  const std::vector<double>& estimates() const { return estimate_; }
  double estimate(Vertex s, Vertex t) const { return estimate_[std::size_t{s} * n_ + t]; }

  // Path of length at most estimate(s, t); empty when t is unreachable.
  std::vector<Vertex> report_path(Vertex s, Vertex t);

  // One reachability tree per source, searched in the sparse subgraph G_s.
  std::vector<PathTree> reachability_trees() const;
  // Edges of G_s for one source.
  Digraph reachability_subgraph(Vertex s) const;

  // Round internals, exposed for tests.
  const std::vector<Vertex>& rebuilt_path(Vertex s, Vertex t) const { return rebuilt_[std::size_t{s} * n_ + t]; }
  RebuiltTag rebuilt_tag(Vertex s, Vertex t) const { return tags_[std::size_t{s} * n_ + t]; }
  const DistMatrix& base_matrix() const { return a_; }
  const std::vector<Vertex>& x_set() const { return x_; }
  const std::vector<Vertex>& hitting_set() const { return hitting_; }
  const PathCollection& collection() const { return pc_; }
  const std::vector<Vertex>& affected_vertices() const { return d_list_; }

 private:
  // Matrix with vertex labels on both sides and a dag node per cell.
  struct Labeled {
    std::vector<Vertex> rows, cols;
    DistMatrix val;
    std::vector<std::int32_t> node;
  };

  // Finiteness products behind the reachability subgraphs.
  struct ReachData {
    WitnessedMatrix fv;  // A*[V,X] * A'[X,V], witnesses index X
    WitnessedMatrix fx;  // A* * A'[V,X], witnesses index V
    WitnessedMatrix l;   // A[X,V] * A, witnesses index V
    std::vector<std::int32_t> x_index;
    Digraph skeleton;
  };

  void start_phase();
  void rebuild_paths();
  void evaluate();
  Labeled select(const Labeled& m, const std::vector<Vertex>& rows, const std::vector<Vertex>& cols) const;
  Labeled product(const Labeled& left, const Labeled& right, const MinplusConfig& config);
  // The edge ab if present, else the rebuilt path; empty for neither.
  std::vector<Vertex> star_path(Vertex a, Vertex b) const;
  ReachData reach_data() const;
  Digraph subgraph_from(const ReachData& r, Vertex s) const;

  std::size_t n_;
  ApspParams params_;
  Digraph graph_;
  SwitchReporter t_;  // reflects the phase-start graph; D is switched off
  PathCollection pc_;
  std::vector<std::uint8_t> in_d_;
  std::vector<Vertex> d_list_;
  std::vector<std::pair<Vertex, Vertex>> y_;

  std::vector<std::vector<Vertex>> rebuilt_;
  std::vector<RebuiltTag> tags_;
  std::vector<Vertex> hitting_, x_;
  DistMatrix a_;
  std::vector<double> estimate_;
  std::vector<std::int32_t> best_node_;
  PathDag dag_;
  ApspDiagnostics diag_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t stamp_clock_ = 0;
};

}  // namespace dyngraph::apsp
