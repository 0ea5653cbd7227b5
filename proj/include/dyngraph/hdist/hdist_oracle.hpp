#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "dyngraph/algebra/fields.hpp"
#include "dyngraph/algebra/ring.hpp"
#include "dyngraph/dyninv/dyn_inverse.hpp"
#include "dyngraph/graph/digraph.hpp"
#include "dyngraph/graph/types.hpp"

namespace dyngraph {

enum class RingMode { kDeterministic, kRandomized };

struct HDistConfig {
  std::size_t n = 0;
  std::size_t h = 1;
  RingMode mode = RingMode::kDeterministic;
  std::size_t cap = 0;  // 0 selects ceil(sqrt(n))
  std::uint64_t seed = 0;
  bool all_pairs = false;  // keep every pair in Y permanently
};

std::size_t default_cap(std::size_t n);

namespace detail {

template <class F>
struct HDistEngine {
  algebra::PolyRing<F> ring;
  dyninv::DynInverse<F> inv;
};

}  // namespace detail

// h-bounded distances from path counts: the least k with a nonzero X^k
// coefficient of (I - XA)^{-1}_{s,t} over Z_p[X]/<X^{h+1}>.
class HDistOracle {
 public:
  explicit HDistOracle(const HDistConfig& config);
  // Starts from `initial`; the inverse is seeded from walk counts
  // sum_k X^k A^k, cheap when the initial graph is sparse.
  HDistOracle(const HDistConfig& config, const Digraph& initial);

  std::size_t num_vertices() const { return config_.n; }
  std::size_t hop_bound() const { return config_.h; }
  const HDistConfig& config() const { return config_; }
  const algebra::Ring& ring() const { return ring_; }
  bool uses_word_arithmetic() const { return engine_.index() == 0; }
  const Digraph& graph() const { return graph_; }

  void edge_update(Vertex u, Vertex v, bool present);
  // Replaces the incidence of every patched vertex with one Woodbury batch.
  void vertex_batch_update(std::span<const VertexPatch> patches);

  // Requires (s,t) in Y.
  Dist query(Vertex s, Vertex t) const;
  Dist y_insert(Vertex s, Vertex t);
  void y_remove(Vertex s, Vertex t);
  void y_clear();
  bool maintained(Vertex s, Vertex t) const;
  // fn(s, t, dist) over every maintained pair.
  template <class Fn>
  void for_each_maintained(Fn&& fn) const {
    std::visit(
        [&](const auto& e) {
          e.inv.for_each_y([&](std::size_t s, std::size_t t, const auto& p) {
            const auto v = e.ring.valuation(p);
            fn(static_cast<Vertex>(s), static_cast<Vertex>(t), v ? static_cast<Dist>(*v) : kInfDist);
          });
        },
        engine_);
  }
  std::size_t y_size() const;

  // Distance for any pair, read from Y when maintained and otherwise computed
  // from the inverse representation without changing Y.
  Dist pair_distance(Vertex s, Vertex t) const;
  std::vector<Dist> source_distances(Vertex s) const;

  // Whether the X^k coefficient of the counting entry is nonzero.
  bool coefficient_nonzero(Vertex s, Vertex t, std::size_t k) const;
  std::size_t low_rank_columns() const;

 private:
  using Engine = std::variant<detail::HDistEngine<algebra::WordField>, detail::HDistEngine<algebra::BigField>>;

  HDistConfig config_;
  algebra::Ring ring_;
  Digraph graph_;
  Engine engine_;
};

}  // namespace dyngraph
