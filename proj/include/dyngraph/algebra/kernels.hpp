#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "dyngraph/algebra/op_counter.hpp"
#include "dyngraph/algebra/poly_matrix.hpp"
#include "dyngraph/algebra/trunc_poly.hpp"

namespace dyngraph::algebra {

enum class Accumulate { kAssign, kSubtract };

struct MatMulConfig {
  std::size_t strassen_threshold = 64;
  bool use_strassen = true;
};

namespace serial {

// Reference product: every coefficient product reduced immediately, no
// accumulator tricks. C(i,j) (op)= sum_k A(i,k) B(k,j) through accessors.
template <class F, class AFn, class BFn, class CFn>
void gemm(const PolyRing<F>& ring, std::size_t m, std::size_t n, std::size_t inner, AFn a, BFn b, CFn c,
          Accumulate mode) {
  using Elem = typename F::Elem;
  const F& f = ring.field();
  const std::size_t h = ring.degree_bound();
  std::vector<Elem> sum(h + 1);
  std::uint64_t ops = 0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (auto& s : sum) s = f.zero();
      for (std::size_t k = 0; k < inner; ++k) {
        const Elem* x = a(i, k);
        const Elem* y = b(k, j);
        for (std::size_t p = 0; p <= h; ++p)
          for (std::size_t q = 0; p + q <= h; ++q) sum[p + q] = f.add(sum[p + q], f.mul(x[p], y[q]));
        ops += (h + 1) * (h + 2) / 2;
      }
      Elem* out = c(i, j);
      for (std::size_t p = 0; p <= h; ++p) out[p] = mode == Accumulate::kAssign ? sum[p] : f.sub(out[p], sum[p]);
    }
  }
  OpCounter::add_mul(ops);
  OpCounter::add_add(ops);
}

}  // namespace serial

namespace parallel {

// Row-parallel product with lazily reduced accumulators and zero skipping.
template <class F, class AFn, class BFn, class CFn>
void gemm(const PolyRing<F>& ring, std::size_t m, std::size_t n, std::size_t inner, AFn a, BFn b, CFn c,
          Accumulate mode) {
  using Acc = typename F::Accumulator;
  const std::size_t len = ring.length();
  const bool unchecked = inner * len <= ring.field().fold_capacity();
  std::uint64_t ops = 0;
#pragma omp parallel reduction(+ : ops) if (m * n * inner > 4096)
  {
    std::vector<Acc> acc(n * len);
#pragma omp for schedule(static)
    for (std::size_t i = 0; i < m; ++i) {
      for (auto& x : acc) ring.field().reset(x);
      for (std::size_t k = 0; k < inner; ++k) {
        const auto* aik = a(i, k);
        if (ring.is_zero(aik)) continue;
        if (unchecked)
          for (std::size_t j = 0; j < n; ++j) ops += ring.template mul_acc<false>(&acc[j * len], aik, b(k, j));
        else
          for (std::size_t j = 0; j < n; ++j) ops += ring.mul_acc(&acc[j * len], aik, b(k, j));
      }
      for (std::size_t j = 0; j < n; ++j) {
        if (mode == Accumulate::kAssign)
          ring.finish_into(c(i, j), &acc[j * len]);
        else
          ring.finish_sub_into(c(i, j), &acc[j * len]);
      }
    }
  }
  OpCounter::add_mul(ops);
  OpCounter::add_add(ops);
}

}  // namespace parallel

template <class F>
void check_product_shape(const PolyMatrix<F>& a, const PolyMatrix<F>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product dimension mismatch");
  if (a.degree_bound() != b.degree_bound()) throw std::invalid_argument("matrix product degree bound mismatch");
}

template <class F>
PolyMatrix<F> mat_mul_classical(const PolyRing<F>& ring, const PolyMatrix<F>& a, const PolyMatrix<F>& b) {
  check_product_shape(a, b);
  PolyMatrix<F> c(a.rows(), b.cols(), ring.degree_bound());
  parallel::gemm(
      ring, a.rows(), b.cols(), a.cols(), [&](std::size_t i, std::size_t k) { return a.at(i, k); },
      [&](std::size_t k, std::size_t j) { return b.at(k, j); }, [&](std::size_t i, std::size_t j) { return c.at(i, j); },
      Accumulate::kAssign);
  return c;
}

template <class F>
PolyMatrix<F> mat_mul_reference(const PolyRing<F>& ring, const PolyMatrix<F>& a, const PolyMatrix<F>& b) {
  check_product_shape(a, b);
  PolyMatrix<F> c(a.rows(), b.cols(), ring.degree_bound());
  serial::gemm(
      ring, a.rows(), b.cols(), a.cols(), [&](std::size_t i, std::size_t k) { return a.at(i, k); },
      [&](std::size_t k, std::size_t j) { return b.at(k, j); }, [&](std::size_t i, std::size_t j) { return c.at(i, j); },
      Accumulate::kAssign);
  return c;
}

template <class F>
PolyMatrix<F> mat_add(const PolyRing<F>& ring, const PolyMatrix<F>& a, const PolyMatrix<F>& b) {
  PolyMatrix<F> c(a.rows(), a.cols(), ring.degree_bound());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < ring.length(); ++k) c.at(i, j)[k] = ring.field().add(a.at(i, j)[k], b.at(i, j)[k]);
  return c;
}

template <class F>
PolyMatrix<F> mat_sub(const PolyRing<F>& ring, const PolyMatrix<F>& a, const PolyMatrix<F>& b) {
  PolyMatrix<F> c(a.rows(), a.cols(), ring.degree_bound());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < ring.length(); ++k) c.at(i, j)[k] = ring.field().sub(a.at(i, j)[k], b.at(i, j)[k]);
  return c;
}

namespace detail {

// Zero-padded copy of the rows x cols block starting at (r0, c0).
template <class F>
PolyMatrix<F> block(const PolyMatrix<F>& a, std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) {
  PolyMatrix<F> out(rows, cols, a.degree_bound());
  for (std::size_t i = 0; i < rows && r0 + i < a.rows(); ++i)
    for (std::size_t j = 0; j < cols && c0 + j < a.cols(); ++j)
      std::copy_n(a.at(r0 + i, c0 + j), a.length(), out.at(i, j));
  return out;
}

template <class F>
void paste(PolyMatrix<F>& dst, const PolyMatrix<F>& src, std::size_t r0, std::size_t c0) {
  for (std::size_t i = 0; i < src.rows() && r0 + i < dst.rows(); ++i)
    for (std::size_t j = 0; j < src.cols() && c0 + j < dst.cols(); ++j)
      std::copy_n(src.at(i, j), src.length(), dst.at(r0 + i, c0 + j));
}

}  // namespace detail

// Strassen recursion; odd dimensions are zero-padded at each level and any
// dimension at or below the threshold falls back to the classical kernel.
template <class F>
PolyMatrix<F> mat_mul_strassen(const PolyRing<F>& ring, const PolyMatrix<F>& a, const PolyMatrix<F>& b,
                               std::size_t threshold) {
  check_product_shape(a, b);
  const std::size_t m = a.rows(), k = a.cols(), n = b.cols();
  if (std::min({m, k, n}) <= std::max<std::size_t>(threshold, 1)) return mat_mul_classical(ring, a, b);
  const std::size_t hm = (m + 1) / 2, hk = (k + 1) / 2, hn = (n + 1) / 2;
  using detail::block;
  const auto a11 = block(a, 0, 0, hm, hk), a12 = block(a, 0, hk, hm, hk);
  const auto a21 = block(a, hm, 0, hm, hk), a22 = block(a, hm, hk, hm, hk);
  const auto b11 = block(b, 0, 0, hk, hn), b12 = block(b, 0, hn, hk, hn);
  const auto b21 = block(b, hk, 0, hk, hn), b22 = block(b, hk, hn, hk, hn);
  auto rec = [&](const PolyMatrix<F>& x, const PolyMatrix<F>& y) { return mat_mul_strassen(ring, x, y, threshold); };
  const auto m1 = rec(mat_add(ring, a11, a22), mat_add(ring, b11, b22));
  const auto m2 = rec(mat_add(ring, a21, a22), b11);
  const auto m3 = rec(a11, mat_sub(ring, b12, b22));
  const auto m4 = rec(a22, mat_sub(ring, b21, b11));
  const auto m5 = rec(mat_add(ring, a11, a12), b22);
  const auto m6 = rec(mat_sub(ring, a21, a11), mat_add(ring, b11, b12));
  const auto m7 = rec(mat_sub(ring, a12, a22), mat_add(ring, b21, b22));
  PolyMatrix<F> c(m, n, ring.degree_bound());
  detail::paste(c, mat_add(ring, mat_sub(ring, mat_add(ring, m1, m4), m5), m7), 0, 0);
  detail::paste(c, mat_add(ring, m3, m5), 0, hn);
  detail::paste(c, mat_add(ring, m2, m4), hm, 0);
  detail::paste(c, mat_add(ring, mat_add(ring, mat_sub(ring, m1, m2), m3), m6), hm, hn);
  return c;
}

template <class F>
PolyMatrix<F> mat_mul(const PolyRing<F>& ring, const PolyMatrix<F>& a, const PolyMatrix<F>& b,
                      const MatMulConfig& config = {}) {
  if (config.use_strassen) return mat_mul_strassen(ring, a, b, config.strassen_threshold);
  return mat_mul_classical(ring, a, b);
}

// Gauss-Jordan elimination over F[X]/<X^{h+1}>; pivots must have a unit
// constant term. Throws SingularError when a column has no such pivot.
template <class F>
PolyMatrix<F> mat_inverse(const PolyRing<F>& ring, const PolyMatrix<F>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("mat_inverse needs a square matrix");
  using Elem = typename F::Elem;
  const F& f = ring.field();
  const std::size_t n = m.rows(), len = ring.length();
  PolyMatrix<F> work = m;
  PolyMatrix<F> inv = PolyMatrix<F>::identity(ring, n);
  std::vector<Elem> scratch(len);
  auto swap_rows = [&](PolyMatrix<F>& x, std::size_t r1, std::size_t r2) {
    for (std::size_t j = 0; j < n; ++j) std::swap_ranges(x.at(r1, j), x.at(r1, j) + len, x.at(r2, j));
  };
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && f.is_zero(work.at(piv, col)[0])) ++piv;
    if (piv == n) throw SingularError("matrix has no unit pivot in column " + std::to_string(col));
    if (piv != col) {
      swap_rows(work, piv, col);
      swap_rows(inv, piv, col);
    }
    const TruncPoly<F> pinv = ring.inverse_unit(work.get(col, col));
    for (std::size_t j = 0; j < n; ++j) {
      ring.mul_into(scratch.data(), work.at(col, j), pinv.data());
      std::copy(scratch.begin(), scratch.end(), work.at(col, j));
      ring.mul_into(scratch.data(), inv.at(col, j), pinv.data());
      std::copy(scratch.begin(), scratch.end(), inv.at(col, j));
    }
    std::uint64_t ops = 0;
#pragma omp parallel for schedule(static) reduction(+ : ops) if (n * n > 1024)
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || ring.is_zero(work.at(r, col))) continue;
      const TruncPoly<F> factor = work.get(r, col);
      std::vector<typename F::Accumulator> acc(len);
      for (std::size_t j = 0; j < n; ++j) {
        for (auto* x : {&work, &inv}) {
          ring.reset(acc.data());
          ops += ring.mul_acc(acc.data(), factor.data(), x->at(col, j));
          ring.finish_sub_into(x->at(r, j), acc.data());
        }
      }
    }
    OpCounter::add_mul(ops);
  }
  return inv;
}

}  // namespace dyngraph::algebra
