#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dyngraph/algebra/op_counter.hpp"

namespace dyngraph::algebra {

class SingularError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Dense element of F[X]/<X^{h+1}>; coefficient k multiplies X^k.
template <class F>
class TruncPoly {
 public:
  using Elem = typename F::Elem;

  TruncPoly() = default;
  explicit TruncPoly(std::size_t degree_bound) : c_(degree_bound + 1) {}

  std::size_t degree_bound() const { return c_.size() - 1; }
  std::size_t size() const { return c_.size(); }
  Elem& operator[](std::size_t k) { return c_[k]; }
  const Elem& operator[](std::size_t k) const { return c_[k]; }
  std::span<Elem> coeffs() { return c_; }
  std::span<const Elem> coeffs() const { return c_; }
  Elem* data() { return c_.data(); }
  const Elem* data() const { return c_.data(); }

  bool operator==(const TruncPoly&) const = default;

 private:
  std::vector<Elem> c_;
};

// Truncated polynomial ring over the field F with degree bound h.
template <class F>
class PolyRing {
 public:
  using Elem = typename F::Elem;
  using Poly = TruncPoly<F>;
  using Acc = typename F::Accumulator;

  PolyRing(F field, std::size_t degree_bound) : f_(std::move(field)), h_(degree_bound) {}

  const F& field() const { return f_; }
  std::size_t degree_bound() const { return h_; }
  std::size_t length() const { return h_ + 1; }

  Poly zero() const { return Poly(h_); }
  Poly one() const {
    Poly p(h_);
    p[0] = f_.one();
    return p;
  }
  Poly monomial(const Elem& c, std::size_t k) const {
    Poly p(h_);
    if (k <= h_) p[k] = c;
    return p;
  }
  Poly from_ints(std::initializer_list<std::int64_t> coeffs) const {
    Poly p(h_);
    std::size_t k = 0;
    for (std::int64_t c : coeffs) {
      if (k > h_) break;
      p[k++] = f_.from_int(c);
    }
    return p;
  }
  std::vector<std::uint64_t> to_uints(const Poly& p) const {
    std::vector<std::uint64_t> out;
    for (const Elem& c : p.coeffs()) out.push_back(f_.to_uint(c));
    return out;
  }

  bool is_zero(const Elem* a) const {
    for (std::size_t k = 0; k <= h_; ++k)
      if (!f_.is_zero(a[k])) return false;
    return true;
  }
  bool is_zero(const Poly& p) const { return is_zero(p.data()); }

  // Index of the lowest nonzero coefficient.
  std::optional<std::size_t> valuation(const Elem* a) const {
    for (std::size_t k = 0; k <= h_; ++k)
      if (!f_.is_zero(a[k])) return k;
    return std::nullopt;
  }
  std::optional<std::size_t> valuation(const Poly& p) const { return valuation(p.data()); }

  Poly add(const Poly& a, const Poly& b) const {
    Poly r(h_);
    for (std::size_t k = 0; k <= h_; ++k) r[k] = f_.add(a[k], b[k]);
    OpCounter::add_add(h_ + 1);
    return r;
  }
  Poly sub(const Poly& a, const Poly& b) const {
    Poly r(h_);
    for (std::size_t k = 0; k <= h_; ++k) r[k] = f_.sub(a[k], b[k]);
    OpCounter::add_add(h_ + 1);
    return r;
  }
  Poly neg(const Poly& a) const {
    Poly r(h_);
    for (std::size_t k = 0; k <= h_; ++k) r[k] = f_.neg(a[k]);
    return r;
  }
  Poly scale(const Poly& a, const Elem& c) const {
    Poly r(h_);
    for (std::size_t k = 0; k <= h_; ++k) r[k] = f_.mul(a[k], c);
    OpCounter::add_mul(h_ + 1);
    return r;
  }
  Poly mul(const Poly& a, const Poly& b) const {
    Poly r(h_);
    mul_into(r.data(), a.data(), b.data());
    return r;
  }

  // out = a * b (out may not alias a or b).
  void mul_into(Elem* out, const Elem* a, const Elem* b) const {
    thread_local std::vector<Acc> acc;
    if (acc.size() < h_ + 1) acc.resize(h_ + 1);
    reset(acc.data());
    const std::uint64_t ops = mul_acc(acc.data(), a, b);
    for (std::size_t k = 0; k <= h_; ++k) out[k] = f_.finish(acc[k]);
    OpCounter::add_mul(ops);
  }

  // acc[x + y] += a[x] * b[y] for x + y <= h; returns the number of products.
  // Unchecked callers guarantee no accumulator exceeds f.fold_capacity() terms.
  template <bool Checked = true>
  std::uint64_t mul_acc(Acc* acc, const Elem* a, const Elem* b) const {
    std::uint64_t ops = 0;
    for (std::size_t x = 0; x <= h_; ++x) {
      if (f_.is_zero(a[x])) continue;
      const std::size_t lim = h_ - x;
      if constexpr (Checked)
        for (std::size_t y = 0; y <= lim; ++y) f_.fma(acc[x + y], a[x], b[y]);
      else
        for (std::size_t y = 0; y <= lim; ++y) f_.fma_unchecked(acc[x + y], a[x], b[y]);
      ops += lim + 1;
    }
    return ops;
  }

  void reset(Acc* acc) const {
    for (std::size_t k = 0; k <= h_; ++k) f_.reset(acc[k]);
  }
  void finish_into(Elem* out, const Acc* acc) const {
    for (std::size_t k = 0; k <= h_; ++k) out[k] = f_.finish(acc[k]);
  }
  void finish_sub_into(Elem* out, const Acc* acc) const {
    for (std::size_t k = 0; k <= h_; ++k) out[k] = f_.sub(out[k], f_.finish(acc[k]));
  }

  // r with q r = 1 mod X^{h+1}; requires a unit constant term.
  Poly inverse_unit(const Poly& q) const {
    if (f_.is_zero(q[0])) throw SingularError("constant term is not a unit");
    const Elem c0_inv = f_.inv(q[0]);
    Poly r(h_);
    r[0] = c0_inv;
    std::uint64_t ops = 0;
    for (std::size_t k = 1; k <= h_; ++k) {
      Acc acc{};
      f_.reset(acc);
      for (std::size_t i = 1; i <= k; ++i) {
        if (f_.is_zero(q[i])) continue;
        f_.fma(acc, q[i], r[k - i]);
        ++ops;
      }
      r[k] = f_.neg(f_.mul(c0_inv, f_.finish(acc)));
    }
    OpCounter::add_mul(ops + h_);
    return r;
  }

  std::string to_string(const Poly& p) const {
    std::string s;
    for (std::size_t k = 0; k <= h_; ++k) {
      if (k) s += ' ';
      s += f_.to_string(p[k]);
    }
    return s;
  }

 private:
  F f_;
  std::size_t h_;
};

}  // namespace dyngraph::algebra
