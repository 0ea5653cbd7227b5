#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "dyngraph/graph/digraph.hpp"
#include "dyngraph/hdist/hdist_oracle.hpp"
#include "dyngraph/reporting/blocks_reporter.hpp"

namespace dyngraph {

struct ReporterConfig {
  std::size_t n = 0;
  std::size_t h = 1;
  std::size_t block_size = 0;  // in original vertices; 0 selects ceil(n/2)
  BlocksVariant variant = BlocksVariant::kBinarySearch;
  RingMode mode = RingMode::kDeterministic;
  std::size_t cap = 0;
  std::uint64_t seed = 0;
  bool source_all_pairs = false;  // keep the whole source oracle in Y
};

// Predecessor queries in the induced subgraph G[W]. Vertex v is split into
// v+ = 2v and v- = 2v + 1 joined by v+ -> v- iff v is in W, every edge u -> v
// becomes u- -> v+, and hop bounds double.
class SwitchReporter {
 public:
  explicit SwitchReporter(const ReporterConfig& config);
  SwitchReporter(const ReporterConfig& config, const Digraph& initial);

  std::size_t num_vertices() const { return config_.n; }
  std::size_t hop_bound() const { return config_.h; }
  const ReporterConfig& config() const { return config_; }
  const Digraph& graph() const { return graph_; }
  Digraph induced_graph() const;
  const BlocksReporter<HDistOracle>& blocks() const { return blocks_; }

  void edge_update(Vertex u, Vertex v, bool present);
  void vertex_batch_update(std::span<const VertexPatch> patches);

  void switch_set(Vertex v, bool on);
  bool switched_on(Vertex v) const { return on_[v] != 0; }
  std::size_t switched_on_count() const;

  // delta^h in G[W]; infinite when s or t is outside W.
  Dist distance(Vertex s, Vertex t) const;
  // With off_targets, a target outside W is still answered: the path has
  // every vertex but t in W.
  std::vector<PredecessorAnswer> submatrix_predecessors(std::span<const Vertex> sources,
                                                       std::span<const std::pair<Vertex, Vertex>> pairs,
                                                       bool off_targets = false);
  PathTree sssp_tree_from(Vertex s, bool off_targets = false);

  // Whether any odd coefficient of the split-graph count s+ -> t+ is nonzero.
  bool odd_coefficient_present(Vertex s, Vertex t) const;

 private:
  ReporterConfig config_;
  Digraph graph_;
  std::vector<std::uint8_t> on_;
  BlocksReporter<HDistOracle> blocks_;
};

}  // namespace dyngraph
