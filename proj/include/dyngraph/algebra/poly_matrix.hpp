#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "dyngraph/algebra/trunc_poly.hpp"

namespace dyngraph::algebra {

// Dense rows x cols matrix of truncated polynomials, row-major, coefficients
// of one entry stored contiguously.
template <class F>
class PolyMatrix {
 public:
  using Elem = typename F::Elem;
  using Poly = TruncPoly<F>;

  PolyMatrix() = default;
  PolyMatrix(std::size_t rows, std::size_t cols, std::size_t degree_bound)
      : rows_(rows), cols_(cols), len_(degree_bound + 1), data_(rows * cols * len_) {}

  static PolyMatrix identity(const PolyRing<F>& ring, std::size_t n) {
    PolyMatrix m(n, n, ring.degree_bound());
    for (std::size_t i = 0; i < n; ++i) m.at(i, i)[0] = ring.field().one();
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t degree_bound() const { return len_ - 1; }
  std::size_t length() const { return len_; }

  Elem* at(std::size_t i, std::size_t j) { return data_.data() + (i * cols_ + j) * len_; }
  const Elem* at(std::size_t i, std::size_t j) const { return data_.data() + (i * cols_ + j) * len_; }

  Poly get(std::size_t i, std::size_t j) const {
    Poly p(len_ - 1);
    const Elem* src = at(i, j);
    for (std::size_t k = 0; k < len_; ++k) p[k] = src[k];
    return p;
  }
  void set(std::size_t i, std::size_t j, const Poly& p) {
    if (p.size() != len_) throw std::invalid_argument("degree bound mismatch");
    Elem* dst = at(i, j);
    for (std::size_t k = 0; k < len_; ++k) dst[k] = p[k];
  }

  bool operator==(const PolyMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t len_ = 1;
  std::vector<Elem> data_;
};

}  // namespace dyngraph::algebra
