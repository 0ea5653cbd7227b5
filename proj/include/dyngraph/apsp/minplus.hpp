#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

namespace dyngraph::apsp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr std::uint32_t kNoWitness = std::numeric_limits<std::uint32_t>::max();

// Dense row-major matrix over {0, inf} and the nonnegative reals.
struct DistMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<double> v;

  DistMatrix() = default;
  DistMatrix(std::size_t r, std::size_t c, double fill = kInf) : rows(r), cols(c), v(r * c, fill) {}

  double& at(std::size_t i, std::size_t j) { return v[i * cols + j]; }
  double at(std::size_t i, std::size_t j) const { return v[i * cols + j]; }
  double max_finite() const;
};

// Product values with, per finite cell, the inner index k certifying it.
struct WitnessedMatrix {
  DistMatrix values;
  std::vector<std::uint32_t> witness;

  std::uint32_t witness_at(std::size_t i, std::size_t j) const { return witness[i * values.cols + j]; }
};

enum class Rounding {
  kExact,     // plain min-plus on the real entries
  kScaled,    // Zwick scaling with K = 2^ceil(log2 ceil(4 / eps))
  kLossless,  // scaling with K raised to cover the largest entry, exact on integer input
};

enum class InnerKernel {
  kNaive,       // bounded-entry min-plus by direct enumeration
  kPolynomial,  // entries encoded as monomials X^a, product over Z_p[X]
};

struct MinplusConfig {
  Rounding rounding = Rounding::kScaled;
  double eps = 0.25;
  InnerKernel kernel = InnerKernel::kNaive;
  bool parallel = true;
};

// Bounded nonnegative integer matrices; kUnbounded marks infinity.
inline constexpr std::uint32_t kUnbounded = std::numeric_limits<std::uint32_t>::max();
struct IntMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<std::uint32_t> v;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), v(r * c, kUnbounded) {}
  std::uint32_t& at(std::size_t i, std::size_t j) { return v[i * cols + j]; }
  std::uint32_t at(std::size_t i, std::size_t j) const { return v[i * cols + j]; }
};

struct IntProduct {
  IntMatrix values;
  std::vector<std::uint32_t> witness;
};

// Exact min-plus with the smallest minimizing index as witness.
namespace serial {
IntProduct bounded_minplus(const IntMatrix& a, const IntMatrix& b);
WitnessedMatrix minplus(const DistMatrix& a, const DistMatrix& b);
}  // namespace serial
namespace parallel {
IntProduct bounded_minplus(const IntMatrix& a, const IntMatrix& b);
WitnessedMatrix minplus(const DistMatrix& a, const DistMatrix& b);
}  // namespace parallel

// Same contract as bounded_minplus for entries in [0, k]: the lowest nonzero
// degree of sum_j X^{a_ij} X^{b_jl} over Z_p[X] is the minimum.
IntProduct polynomial_minplus(const IntMatrix& a, const IntMatrix& b, std::uint32_t k);

// Rounding resolution used for one product.
std::uint64_t rounding_levels(const MinplusConfig& config, double max_entry);

// (A*B)_ij <= result_ij <= (1 + eps) (A*B)_ij, witnesses point at an inner
// index whose (unrounded) sum is at most the result. Negative entries throw.
WitnessedMatrix approx_minplus(const DistMatrix& a, const DistMatrix& b, const MinplusConfig& config);

}  // namespace dyngraph::apsp
