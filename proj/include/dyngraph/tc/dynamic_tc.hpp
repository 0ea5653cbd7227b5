#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "dyngraph/graph/digraph.hpp"
#include "dyngraph/graph/scc.hpp"
#include "dyngraph/hdist/hdist_oracle.hpp"
#include "dyngraph/hitting/hitting.hpp"

namespace dyngraph::tc {

// Row-major boolean matrix packed into 64-bit words.
class BoolMatrix {
 public:
  BoolMatrix() = default;
  BoolMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), words_((cols + 63) / 64), bits_(rows * words_, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool get(std::size_t i, std::size_t j) const { return (bits_[i * words_ + j / 64] >> (j % 64)) & 1; }
  void set(std::size_t i, std::size_t j, bool on = true) {
    const std::uint64_t m = std::uint64_t{1} << (j % 64);
    if (on)
      bits_[i * words_ + j / 64] |= m;
    else
      bits_[i * words_ + j / 64] &= ~m;
  }
  const std::uint64_t* row(std::size_t i) const { return bits_.data() + i * words_; }
  std::uint64_t* row(std::size_t i) { return bits_.data() + i * words_; }
  std::size_t words() const { return words_; }
  // Cell-wise this <= other.
  bool contained_in(const BoolMatrix& other) const;
  bool operator==(const BoolMatrix&) const = default;

 private:
  std::size_t rows_ = 0, cols_ = 0, words_ = 0;
  std::vector<std::uint64_t> bits_;
};

namespace serial {
BoolMatrix multiply(const BoolMatrix& a, const BoolMatrix& b);
}
namespace parallel {
BoolMatrix multiply(const BoolMatrix& a, const BoolMatrix& b);
}

// Zero fields select d = ceil(n/2) and h = min(n, ceil(12n/d)).
struct TcParams {
  std::size_t d = 0;
  std::size_t h = 0;
  RingMode mode = RingMode::kDeterministic;
  std::size_t cap = 0;
  std::uint64_t seed = 0;
  bool parallel = true;
};

TcParams resolve_tc_params(std::size_t n, TcParams p);

struct TcDiagnostics {
  std::size_t n = 0;
  TcParams params;
  std::uint64_t rounds = 0;
  std::size_t hitting_size = 0;
  std::size_t blocks = 0;
  std::size_t ell = 0;
  std::size_t squarings = 0;
  std::size_t fixed_point_at = 0;  // first squaring index with no change
  bool monotone_chain = true;
  std::uint64_t last_report_probes = 0;
};

// Deterministic fully dynamic transitive closure under vertex updates.
class DynamicTc {
 public:
  DynamicTc(std::size_t n, const TcParams& params = {});

  std::size_t num_vertices() const { return n_; }
  const TcParams& params() const { return params_; }
  const Digraph& graph() const { return graph_; }
  const TcDiagnostics& diagnostics() const { return diag_; }

  const BoolMatrix& vertex_update(std::span<const VertexPatch> patches);
  const BoolMatrix& closure() const { return closure_; }
  bool reachable(Vertex s, Vertex t) const { return closure_.get(s, t); }

  // Some s -> t path, built with at most 2n closure probes; throws when t is
  // unreachable from s.
  std::vector<Vertex> report_path(Vertex s, Vertex t);

  // Round internals, exposed for tests.
  const BoolMatrix& base_matrix() const { return a_; }
  const WeakHittingSet& weak_hitting() const { return weak_; }
  const HDistOracle& oracle() const { return oracle_; }

 private:
  void recompute();

  std::size_t n_;
  TcParams params_;
  Digraph graph_;
  HDistOracle oracle_;
  WeakHittingSet weak_;
  BoolMatrix a_, closure_;
  // Path reporting cache: condensation in topological order, a representative
  // edge per condensation edge, and adjacency of the SCC skeleton.
  SccDecomposition scc_;
  std::vector<std::pair<Vertex, Vertex>> cross_edge_;
  std::vector<std::vector<Vertex>> skeleton_out_;
  TcDiagnostics diag_;
};

}  // namespace dyngraph::tc
