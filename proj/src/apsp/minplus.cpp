#include "dyngraph/apsp/minplus.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "dyngraph/algebra/fields.hpp"
#include "dyngraph/algebra/kernels.hpp"
#include "dyngraph/algebra/poly_matrix.hpp"

namespace dyngraph::apsp {

double DistMatrix::max_finite() const {
  double m = 0;
  for (double x : v)
    if (x != kInf) m = std::max(m, x);
  return m;
}

namespace {

void check_shapes(std::size_t a_cols, std::size_t b_rows) {
  if (a_cols != b_rows) throw std::invalid_argument("min-plus shape mismatch");
}

void check_nonnegative(const DistMatrix& m) {
  for (double x : m.v)
    if (x < 0 || std::isnan(x)) throw std::invalid_argument("min-plus entries must be nonnegative");
}

// One output row of the bounded product.
void bounded_row(const IntMatrix& a, const IntMatrix& b, std::size_t i, IntProduct& out) {
  for (std::size_t j = 0; j < b.cols; ++j) {
    std::uint64_t best = kUnbounded;
    std::uint32_t arg = kNoWitness;
    for (std::size_t k = 0; k < a.cols; ++k) {
      const std::uint32_t x = a.at(i, k), y = b.at(k, j);
      if (x == kUnbounded || y == kUnbounded) continue;
      const std::uint64_t s = std::uint64_t{x} + y;
      if (s < best) {
        best = s;
        arg = static_cast<std::uint32_t>(k);
      }
    }
    if (arg != kNoWitness) {
      out.values.at(i, j) = static_cast<std::uint32_t>(best);
      out.witness[i * b.cols + j] = arg;
    }
  }
}

void real_row(const DistMatrix& a, const DistMatrix& b, std::size_t i, WitnessedMatrix& out) {
  for (std::size_t j = 0; j < b.cols; ++j) {
    double best = kInf;
    std::uint32_t arg = kNoWitness;
    for (std::size_t k = 0; k < a.cols; ++k) {
      const double s = a.at(i, k) + b.at(k, j);
      if (s < best) {
        best = s;
        arg = static_cast<std::uint32_t>(k);
      }
    }
    out.values.at(i, j) = best;
    out.witness[i * b.cols + j] = arg;
  }
}

IntProduct empty_product(const IntMatrix& a, const IntMatrix& b) {
  check_shapes(a.cols, b.rows);
  IntProduct out{IntMatrix(a.rows, b.cols), {}};
  out.witness.assign(a.rows * b.cols, kNoWitness);
  return out;
}

WitnessedMatrix empty_real(const DistMatrix& a, const DistMatrix& b) {
  check_shapes(a.cols, b.rows);
  WitnessedMatrix out{DistMatrix(a.rows, b.cols), {}};
  out.witness.assign(a.rows * b.cols, kNoWitness);
  return out;
}

}  // namespace

namespace serial {

IntProduct bounded_minplus(const IntMatrix& a, const IntMatrix& b) {
  IntProduct out = empty_product(a, b);
  for (std::size_t i = 0; i < a.rows; ++i) bounded_row(a, b, i, out);
  return out;
}

WitnessedMatrix minplus(const DistMatrix& a, const DistMatrix& b) {
  WitnessedMatrix out = empty_real(a, b);
  for (std::size_t i = 0; i < a.rows; ++i) real_row(a, b, i, out);
  return out;
}

}  // namespace serial

namespace parallel {

IntProduct bounded_minplus(const IntMatrix& a, const IntMatrix& b) {
  IntProduct out = empty_product(a, b);
  const auto rows = static_cast<std::ptrdiff_t>(a.rows);
#pragma omp parallel for schedule(static) if (a.rows * a.cols * b.cols > 4096)
  for (std::ptrdiff_t i = 0; i < rows; ++i) bounded_row(a, b, static_cast<std::size_t>(i), out);
  return out;
}

WitnessedMatrix minplus(const DistMatrix& a, const DistMatrix& b) {
  WitnessedMatrix out = empty_real(a, b);
  const auto rows = static_cast<std::ptrdiff_t>(a.rows);
#pragma omp parallel for schedule(static) if (a.rows * a.cols * b.cols > 4096)
  for (std::ptrdiff_t i = 0; i < rows; ++i) real_row(a, b, static_cast<std::size_t>(i), out);
  return out;
}

}  // namespace parallel

IntProduct polynomial_minplus(const IntMatrix& a, const IntMatrix& b, std::uint32_t k) {
  using algebra::WordField;
  IntProduct out = empty_product(a, b);
  // Coefficients count minimizing terms, so any prime above the inner
  // dimension keeps them nonzero.
  const algebra::PolyRing<WordField> ring(WordField(2305843009213693951ULL), 2 * std::size_t{k});
  const auto& f = ring.field();
  auto encode = [&](const IntMatrix& m) {
    algebra::PolyMatrix<WordField> p(m.rows, m.cols, ring.degree_bound());
    for (std::size_t i = 0; i < m.rows; ++i)
      for (std::size_t j = 0; j < m.cols; ++j) {
        const std::uint32_t x = m.at(i, j);
        if (x == kUnbounded) continue;
        if (x > k) throw std::invalid_argument("entry above the polynomial kernel bound");
        p.at(i, j)[x] = f.one();
      }
    return p;
  };
  const auto pa = encode(a), pb = encode(b);
  algebra::PolyMatrix<WordField> pc(a.rows, b.cols, ring.degree_bound());
  algebra::parallel::gemm(
      ring, a.rows, b.cols, a.cols, [&](std::size_t i, std::size_t j) { return pa.at(i, j); },
      [&](std::size_t i, std::size_t j) { return pb.at(i, j); }, [&](std::size_t i, std::size_t j) { return pc.at(i, j); },
      algebra::Accumulate::kAssign);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < b.cols; ++j) {
      const auto deg = ring.valuation(pc.at(i, j));
      if (!deg) continue;
      const auto d = static_cast<std::uint32_t>(*deg);
      out.values.at(i, j) = d;
      for (std::size_t w = 0; w < a.cols; ++w) {
        const std::uint32_t x = a.at(i, w), y = b.at(w, j);
        if (x != kUnbounded && y != kUnbounded && x + y == d) {
          out.witness[i * b.cols + j] = static_cast<std::uint32_t>(w);
          break;
        }
      }
    }
  return out;
}

std::uint64_t rounding_levels(const MinplusConfig& config, double max_entry) {
  if (!(config.eps > 0)) throw std::invalid_argument("eps must be positive");
  const auto base = static_cast<std::uint64_t>(std::ceil(4.0 / config.eps));
  std::uint64_t k = std::bit_ceil(std::max<std::uint64_t>(1, base));
  if (config.rounding == Rounding::kLossless) {
    const auto top = static_cast<std::uint64_t>(std::ceil(std::max(1.0, max_entry)));
    k = std::max(k, std::bit_ceil(top));
  }
  return k;
}

WitnessedMatrix approx_minplus(const DistMatrix& a, const DistMatrix& b, const MinplusConfig& config) {
  check_shapes(a.cols, b.rows);
  check_nonnegative(a);
  check_nonnegative(b);
  if (config.rounding == Rounding::kExact) return config.parallel ? parallel::minplus(a, b) : serial::minplus(a, b);

  const double top = std::max(a.max_finite(), b.max_finite());
  const std::uint64_t k = rounding_levels(config, top);
  if (k >= kUnbounded / 4) throw std::invalid_argument("rounding resolution too large");
  // Scales R = 1, 2, 4, ... up to the largest finite entry.
  const std::uint64_t top_scale = std::bit_ceil(static_cast<std::uint64_t>(std::ceil(std::max(1.0, top))));
  WitnessedMatrix out = empty_real(a, b);
  auto round = [&](const DistMatrix& m, double r) {
    IntMatrix q(m.rows, m.cols);
    for (std::size_t i = 0; i < m.v.size(); ++i)
      if (m.v[i] <= r) q.v[i] = static_cast<std::uint32_t>(std::ceil(m.v[i] * double(k) / r));
    return q;
  };
  for (std::uint64_t r = 1; r <= top_scale; r *= 2) {
    const double scale = double(r);
    const IntMatrix qa = round(a, scale), qb = round(b, scale);
    IntProduct p;
    if (config.kernel == InnerKernel::kPolynomial)
      p = polynomial_minplus(qa, qb, static_cast<std::uint32_t>(k));
    else
      p = config.parallel ? parallel::bounded_minplus(qa, qb) : serial::bounded_minplus(qa, qb);
    for (std::size_t c = 0; c < out.values.v.size(); ++c) {
      if (p.values.v[c] == kUnbounded) continue;
      const double est = double(p.values.v[c]) * scale / double(k);
      if (est < out.values.v[c]) {
        out.values.v[c] = est;
        out.witness[c] = p.witness[c];
      }
    }
  }
  return out;
}

}  // namespace dyngraph::apsp
