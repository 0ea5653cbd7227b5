#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "dyngraph/algebra/kernels.hpp"
#include "dyngraph/algebra/poly_matrix.hpp"
#include "dyngraph/algebra/trunc_poly.hpp"

namespace dyngraph::dyninv {

using algebra::PolyMatrix;
using algebra::PolyRing;
using algebra::TruncPoly;

// Maintains M^{-1} = N - L R^T under entry and low-rank updates of M, plus an
// explicit cache of the inverse entries listed in the cell set Y.
template <class F>
class DynInverse {
 public:
  using Elem = typename F::Elem;
  using Poly = TruncPoly<F>;
  using Acc = typename F::Accumulator;

  // N = M^{-1}; throws algebra::SingularError if M is not invertible.
  DynInverse(const PolyRing<F>& ring, const PolyMatrix<F>& m, std::size_t cap)
      : DynInverse(ring, algebra::mat_inverse(ring, m), cap, trusted_tag{}) {}

  // Starts from a known inverse (for instance I for M = I).
  static DynInverse from_inverse(const PolyRing<F>& ring, PolyMatrix<F> inverse, std::size_t cap) {
    return DynInverse(ring, std::move(inverse), cap, trusted_tag{});
  }

  std::size_t size() const { return n_; }
  std::size_t cap() const { return cap_; }
  std::size_t low_rank_columns() const { return k_; }
  std::size_t updates_since_reset() const { return k_; }
  std::uint64_t resets() const { return resets_; }
  const PolyRing<F>& ring() const { return ring_; }

  // M += delta e_i e_j^T via Sherman-Morrison.
  void entry_update(std::size_t i, std::size_t j, const Poly& delta) {
    check_index(i);
    check_index(j);
    if (ring_.is_zero(delta)) return;
    const std::size_t len = ring_.length();
    std::vector<Elem> col(n_ * len), row(n_ * len);
    column_of_inverse(i, col.data());
    row_of_inverse(j, row.data());
    // 1 + v^T M^{-1} u = 1 + delta (M^{-1})_{j,i}
    Poly denom = ring_.mul(delta, entry_view(col.data(), j));
    denom[0] = ring_.field().add(denom[0], ring_.field().one());
    const Poly scale = ring_.mul(delta, ring_.inverse_unit(denom));
    for (std::size_t r = 0; r < n_; ++r) ring_.mul_into(l_.at(r, k_), col.data() + r * len, scale.data());
    for (std::size_t c = 0; c < n_; ++c) std::copy_n(row.data() + c * len, len, r_.at(c, k_));
    refresh_y_rank_one(k_);
    ++k_;
    if (k_ == cap_) fold();
  }

  // M += U V^T via Woodbury; only N absorbs the correction.
  void batch_update(const PolyMatrix<F>& u, const PolyMatrix<F>& v) {
    if (u.rows() != n_ || v.rows() != n_ || u.cols() != v.cols())
      throw std::invalid_argument("batch update dimension mismatch");
    const std::size_t r = u.cols();
    if (r == 0) return;
    using algebra::Accumulate;
    namespace par = algebra::parallel;
    // MU = N U - L (R^T U)
    PolyMatrix<F> mu(n_, r, h_);
    par::gemm(ring_, n_, r, n_, [&](auto a, auto b) { return n_mat_.at(a, b); }, [&](auto a, auto b) { return u.at(a, b); },
              [&](auto a, auto b) { return mu.at(a, b); }, Accumulate::kAssign);
    // VM^T = M^{-T} V = N^T V - R (L^T V)
    PolyMatrix<F> vmt(n_, r, h_);
    par::gemm(ring_, n_, r, n_, [&](auto a, auto b) { return n_mat_.at(b, a); }, [&](auto a, auto b) { return v.at(a, b); },
              [&](auto a, auto b) { return vmt.at(a, b); }, Accumulate::kAssign);
    if (k_ > 0) {
      PolyMatrix<F> rtu(k_, r, h_), ltv(k_, r, h_);
      par::gemm(ring_, k_, r, n_, [&](auto a, auto b) { return r_.at(b, a); }, [&](auto a, auto b) { return u.at(a, b); },
                [&](auto a, auto b) { return rtu.at(a, b); }, Accumulate::kAssign);
      par::gemm(ring_, k_, r, n_, [&](auto a, auto b) { return l_.at(b, a); }, [&](auto a, auto b) { return v.at(a, b); },
                [&](auto a, auto b) { return ltv.at(a, b); }, Accumulate::kAssign);
      par::gemm(ring_, n_, r, k_, [&](auto a, auto b) { return l_.at(a, b); }, [&](auto a, auto b) { return rtu.at(a, b); },
                [&](auto a, auto b) { return mu.at(a, b); }, Accumulate::kSubtract);
      par::gemm(ring_, n_, r, k_, [&](auto a, auto b) { return r_.at(a, b); }, [&](auto a, auto b) { return ltv.at(a, b); },
                [&](auto a, auto b) { return vmt.at(a, b); }, Accumulate::kSubtract);
    }
    // Capacitance I + V^T M^{-1} U.
    PolyMatrix<F> capacitance(r, r, h_);
    par::gemm(ring_, r, r, n_, [&](auto a, auto b) { return v.at(b, a); }, [&](auto a, auto b) { return mu.at(a, b); },
              [&](auto a, auto b) { return capacitance.at(a, b); }, Accumulate::kAssign);
    for (std::size_t a = 0; a < r; ++a) capacitance.at(a, a)[0] = ring_.field().add(capacitance.at(a, a)[0], ring_.field().one());
    const PolyMatrix<F> cap_inv = algebra::mat_inverse(ring_, capacitance);
    const PolyMatrix<F> left = algebra::mat_mul_classical(ring_, mu, cap_inv);
    par::gemm(ring_, n_, n_, r, [&](auto a, auto b) { return left.at(a, b); }, [&](auto a, auto b) { return vmt.at(b, a); },
              [&](auto a, auto b) { return n_mat_.at(a, b); }, Accumulate::kSubtract);
    refresh_y(left, vmt, r);
  }

  // Adds (s,t) to Y and returns the cached inverse entry.
  const Poly& y_insert(std::size_t s, std::size_t t) {
    check_index(s);
    check_index(t);
    const std::uint64_t key = pack(s, t);
    auto it = y_index_.find(key);
    if (it != y_index_.end()) return y_values_[it->second];
    y_index_.emplace(key, y_pairs_.size());
    y_pairs_.push_back(key);
    y_values_.push_back(peek(s, t));
    return y_values_.back();
  }

  void y_remove(std::size_t s, std::size_t t) {
    auto it = y_index_.find(pack(s, t));
    if (it == y_index_.end()) return;
    const std::size_t slot = it->second;
    y_index_.erase(it);
    if (slot + 1 != y_pairs_.size()) {
      y_pairs_[slot] = y_pairs_.back();
      y_values_[slot] = std::move(y_values_.back());
      y_index_[y_pairs_[slot]] = slot;
    }
    y_pairs_.pop_back();
    y_values_.pop_back();
  }

  void y_clear() {
    y_index_.clear();
    y_pairs_.clear();
    y_values_.clear();
  }

  bool y_contains(std::size_t s, std::size_t t) const { return y_index_.count(pack(s, t)) != 0; }
  std::size_t y_size() const { return y_pairs_.size(); }

  const Poly& y_value(std::size_t s, std::size_t t) const {
    auto it = y_index_.find(pack(s, t));
    if (it == y_index_.end()) throw std::out_of_range("pair is not maintained in Y");
    return y_values_[it->second];
  }

  template <class Fn>
  void for_each_y(Fn&& fn) const {
    for (std::size_t i = 0; i < y_pairs_.size(); ++i)
      fn(static_cast<std::size_t>(y_pairs_[i] >> 32), static_cast<std::size_t>(y_pairs_[i] & 0xffffffffu), y_values_[i]);
  }

  // (M^{-1})_{s,t} from the representation, without touching Y.
  Poly peek(std::size_t s, std::size_t t) const {
    check_index(s);
    check_index(t);
    Poly out(h_);
    std::copy_n(n_mat_.at(s, t), ring_.length(), out.data());
    if (k_ == 0) return out;
    std::vector<Acc> acc(ring_.length());
    algebra::OpCounter::add_mul(
        sub_dot(out.data(), k_, [&](std::size_t c) { return l_.at(s, c); }, [&](std::size_t c) { return r_.at(t, c); },
                acc.data()));
    return out;
  }

  PolyMatrix<F> materialize() const {
    PolyMatrix<F> out = n_mat_;
    if (k_ > 0)
      algebra::parallel::gemm(
          ring_, n_, n_, k_, [&](auto a, auto b) { return l_.at(a, b); }, [&](auto a, auto b) { return r_.at(b, a); },
          [&](auto a, auto b) { return out.at(a, b); }, algebra::Accumulate::kSubtract);
    return out;
  }

 private:
  struct trusted_tag {};

  DynInverse(const PolyRing<F>& ring, PolyMatrix<F> inverse, std::size_t cap, trusted_tag)
      : ring_(ring),
        n_(inverse.rows()),
        h_(ring.degree_bound()),
        cap_(cap),
        n_mat_(std::move(inverse)),
        l_(n_, cap, h_),
        r_(n_, cap, h_) {
    if (cap_ == 0) throw std::invalid_argument("cap must be positive");
    if (n_mat_.rows() != n_mat_.cols()) throw std::invalid_argument("inverse must be square");
  }

  static std::uint64_t pack(std::size_t s, std::size_t t) { return (std::uint64_t{s} << 32) | t; }

  void check_index(std::size_t i) const {
    if (i >= n_) throw std::out_of_range("matrix index out of range");
  }

  static Poly entry_view(const Elem* data, std::size_t idx, std::size_t len) {
    Poly p(len - 1);
    std::copy_n(data + idx * len, len, p.data());
    return p;
  }
  Poly entry_view(const Elem* data, std::size_t idx) const { return entry_view(data, idx, ring_.length()); }

  // out -= sum_{c < terms} a(c) b(c), with acc as scratch.
  template <class AFn, class BFn>
  std::uint64_t sub_dot(Elem* out, std::size_t terms, AFn a, BFn b, Acc* acc) const {
    ring_.reset(acc);
    std::uint64_t ops = 0;
    if (terms * ring_.length() <= ring_.field().fold_capacity())
      for (std::size_t c = 0; c < terms; ++c) ops += ring_.template mul_acc<false>(acc, a(c), b(c));
    else
      for (std::size_t c = 0; c < terms; ++c) ops += ring_.mul_acc(acc, a(c), b(c));
    ring_.finish_sub_into(out, acc);
    return ops;
  }

  // out[r] = (M^{-1})_{r,i}
  void column_of_inverse(std::size_t i, Elem* out) const {
    const std::size_t len = ring_.length();
    std::uint64_t ops = 0;
#pragma omp parallel reduction(+ : ops) if (n_ * k_ * len * len > 200000)
    {
      std::vector<Acc> acc(len);
#pragma omp for schedule(static)
      for (std::size_t r = 0; r < n_; ++r) {
        std::copy_n(n_mat_.at(r, i), len, out + r * len);
        if (k_ == 0) continue;
        ops += sub_dot(
            out + r * len, k_, [&](std::size_t c) { return l_.at(r, c); }, [&](std::size_t c) { return r_.at(i, c); },
            acc.data());
      }
    }
    algebra::OpCounter::add_mul(ops);
  }

  // out[c] = (M^{-1})_{j,c}
  void row_of_inverse(std::size_t j, Elem* out) const {
    const std::size_t len = ring_.length();
    std::uint64_t ops = 0;
#pragma omp parallel reduction(+ : ops) if (n_ * k_ * len * len > 200000)
    {
      std::vector<Acc> acc(len);
#pragma omp for schedule(static)
      for (std::size_t c = 0; c < n_; ++c) {
        std::copy_n(n_mat_.at(j, c), len, out + c * len);
        if (k_ == 0) continue;
        ops += sub_dot(
            out + c * len, k_, [&](std::size_t t) { return l_.at(j, t); }, [&](std::size_t t) { return r_.at(c, t); },
            acc.data());
      }
    }
    algebra::OpCounter::add_mul(ops);
  }

  // y_{s,t} -= L[s,col] R[t,col]
  void refresh_y_rank_one(std::size_t col) {
    const std::size_t len = ring_.length();
    std::uint64_t ops = 0;
#pragma omp parallel reduction(+ : ops) if (y_pairs_.size() * len * len > 200000)
    {
      std::vector<Acc> acc(len);
#pragma omp for schedule(static)
      for (std::size_t i = 0; i < y_pairs_.size(); ++i) {
        const std::size_t s = y_pairs_[i] >> 32, t = y_pairs_[i] & 0xffffffffu;
        ops += sub_dot(
            y_values_[i].data(), 1, [&](std::size_t) { return l_.at(s, col); },
            [&](std::size_t) { return r_.at(t, col); }, acc.data());
      }
    }
    algebra::OpCounter::add_mul(ops);
  }

  // y_{s,t} -= sum_a left[s,a] right[t,a]
  void refresh_y(const PolyMatrix<F>& left, const PolyMatrix<F>& right, std::size_t r) {
    const std::size_t len = ring_.length();
    std::uint64_t ops = 0;
#pragma omp parallel reduction(+ : ops) if (y_pairs_.size() * r * len * len > 200000)
    {
      std::vector<Acc> acc(len);
#pragma omp for schedule(static)
      for (std::size_t i = 0; i < y_pairs_.size(); ++i) {
        const std::size_t s = y_pairs_[i] >> 32, t = y_pairs_[i] & 0xffffffffu;
        ops += sub_dot(
            y_values_[i].data(), r, [&](std::size_t a) { return left.at(s, a); },
            [&](std::size_t a) { return right.at(t, a); }, acc.data());
      }
    }
    algebra::OpCounter::add_mul(ops);
  }

  // N <- N - L R^T, then empty L and R.
  void fold() {
    algebra::parallel::gemm(
        ring_, n_, n_, k_, [&](auto a, auto b) { return l_.at(a, b); }, [&](auto a, auto b) { return r_.at(b, a); },
        [&](auto a, auto b) { return n_mat_.at(a, b); }, algebra::Accumulate::kSubtract);
    for (std::size_t r = 0; r < n_; ++r)
      for (std::size_t c = 0; c < k_; ++c) {
        std::fill_n(l_.at(r, c), ring_.length(), ring_.field().zero());
        std::fill_n(r_.at(r, c), ring_.length(), ring_.field().zero());
      }
    k_ = 0;
    ++resets_;
  }

  PolyRing<F> ring_;
  std::size_t n_;
  std::size_t h_;
  std::size_t cap_;
  PolyMatrix<F> n_mat_;
  PolyMatrix<F> l_;
  PolyMatrix<F> r_;
  std::size_t k_ = 0;
  std::uint64_t resets_ = 0;
  std::unordered_map<std::uint64_t, std::size_t> y_index_;
  std::vector<std::uint64_t> y_pairs_;
  std::vector<Poly> y_values_;
};

}  // namespace dyngraph::dyninv
