#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace dyngraph::algebra {

// Z_p for odd p < 2^63, elements kept in Montgomery form (a R mod p, R = 2^64).
class WordField {
 public:
  using Elem = std::uint64_t;
  using u128 = unsigned __int128;

  // Sum of raw 128-bit products, reduced once at the end.
  struct Accumulator {
    u128 sum = 0;
    Elem done = 0;
    std::uint32_t terms = 0;
  };

  explicit WordField(std::uint64_t p) : p_(p) {
    if (p < 3 || (p & 1) == 0 || (p >> 63) != 0) throw std::invalid_argument("WordField needs an odd modulus below 2^63");
    std::uint64_t inv = p;
    for (int i = 0; i < 6; ++i) inv *= 2 - p * inv;
    neg_inv_ = ~inv + 1;
    r1_ = static_cast<std::uint64_t>((static_cast<u128>(1) << 64) % p);
    r2_ = static_cast<std::uint64_t>(static_cast<u128>(r1_) * r1_ % p);
    const u128 sq = static_cast<u128>(p - 1) * (p - 1);
    const u128 limit = ~static_cast<u128>(0) / sq;
    fold_limit_ = limit > 0xffffffffu ? 0xffffffffu : static_cast<std::uint32_t>(limit);
  }

  std::uint64_t modulus() const { return p_; }
  std::string modulus_string() const { return std::to_string(p_); }

  Elem zero() const { return 0; }
  Elem one() const { return r1_; }
  Elem from_uint(std::uint64_t v) const { return redc(static_cast<u128>(v % p_) * r2_); }
  Elem from_int(std::int64_t v) const {
    if (v >= 0) return from_uint(static_cast<std::uint64_t>(v));
    return neg(from_uint(static_cast<std::uint64_t>(-(v + 1)) + 1));
  }
  std::uint64_t to_uint(Elem a) const { return redc(a); }
  std::string to_string(Elem a) const { return std::to_string(to_uint(a)); }

  bool is_zero(Elem a) const { return a == 0; }
  bool equal(Elem a, Elem b) const { return a == b; }
  Elem add(Elem a, Elem b) const {
    Elem s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + (p_ - b); }
  Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
  Elem mul(Elem a, Elem b) const { return redc(static_cast<u128>(a) * b); }

  Elem inv(Elem a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    Elem result = r1_;
    Elem base = a;
    for (std::uint64_t e = p_ - 2; e != 0; e >>= 1) {
      if (e & 1) result = mul(result, base);
      base = mul(base, base);
    }
    return result;
  }

  void reset(Accumulator& acc) const { acc = Accumulator{}; }
  void fma(Accumulator& acc, Elem a, Elem b) const {
    acc.sum += static_cast<u128>(a) * b;
    if (++acc.terms == fold_limit_) {
      acc.done = add(acc.done, reduce_wide(acc.sum));
      acc.sum = 0;
      acc.terms = 0;
    }
  }
  // Products that fit in one accumulator without folding.
  std::uint64_t fold_capacity() const { return fold_limit_; }
  void fma_unchecked(Accumulator& acc, Elem a, Elem b) const { acc.sum += static_cast<u128>(a) * b; }
  Elem finish(const Accumulator& acc) const { return add(acc.done, reduce_wide(acc.sum)); }

 private:
  // Montgomery reduction, valid for t < p * 2^64 (the sum below stays under
  // 2p * 2^64 < 2^128 because p < 2^63).
  std::uint64_t redc(u128 t) const {
    const std::uint64_t m = static_cast<std::uint64_t>(t) * neg_inv_;
    const u128 s = t + static_cast<u128>(m) * p_;
    const std::uint64_t r = static_cast<std::uint64_t>(s >> 64);
    return r >= p_ ? r - p_ : r;
  }
  // REDC of an arbitrary 128-bit sum of Montgomery products.
  Elem reduce_wide(u128 t) const {
    std::uint64_t hi = static_cast<std::uint64_t>(t >> 64);
    if (hi >= p_) hi %= p_;
    return redc((static_cast<u128>(hi) << 64) | static_cast<std::uint64_t>(t));
  }

  std::uint64_t p_;
  std::uint64_t neg_inv_ = 0;
  std::uint64_t r1_ = 0;
  std::uint64_t r2_ = 0;
  std::uint32_t fold_limit_ = 0;
};

// Z_p for arbitrary primes using GMP integers in [0, p).
class BigField {
 public:
  using Elem = mpz_class;

  struct Accumulator {
    mpz_class sum;
  };

  explicit BigField(mpz_class p) : p_(std::move(p)) {
    if (p_ < 2) throw std::invalid_argument("BigField needs a modulus >= 2");
  }

  const mpz_class& modulus() const { return p_; }
  std::string modulus_string() const { return p_.get_str(); }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_uint(std::uint64_t v) const {
    mpz_class r = static_cast<unsigned long>(v);
    return r % p_;
  }
  Elem from_int(std::int64_t v) const {
    mpz_class r = static_cast<long>(v);
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), p_.get_mpz_t());
    return r;
  }
  std::uint64_t to_uint(const Elem& a) const { return mpz_get_ui(a.get_mpz_t()); }
  std::string to_string(const Elem& a) const { return a.get_str(); }

  bool is_zero(const Elem& a) const { return mpz_sgn(a.get_mpz_t()) == 0; }
  bool equal(const Elem& a, const Elem& b) const { return a == b; }
  Elem add(const Elem& a, const Elem& b) const {
    Elem s = a + b;
    if (s >= p_) s -= p_;
    return s;
  }
  Elem sub(const Elem& a, const Elem& b) const {
    Elem s = a - b;
    if (mpz_sgn(s.get_mpz_t()) < 0) s += p_;
    return s;
  }
  Elem neg(const Elem& a) const { return is_zero(a) ? Elem(0) : Elem(p_ - a); }
  Elem mul(const Elem& a, const Elem& b) const {
    Elem r;
    mpz_mul(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), p_.get_mpz_t());
    return r;
  }
  Elem inv(const Elem& a) const {
    Elem r;
    if (is_zero(a) || mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p_.get_mpz_t()) == 0)
      throw std::domain_error("inverse of a non-unit");
    return r;
  }

  void reset(Accumulator& acc) const { mpz_set_ui(acc.sum.get_mpz_t(), 0); }
  void fma(Accumulator& acc, const Elem& a, const Elem& b) const {
    mpz_addmul(acc.sum.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  }
  std::uint64_t fold_capacity() const { return ~std::uint64_t{0}; }
  void fma_unchecked(Accumulator& acc, const Elem& a, const Elem& b) const { fma(acc, a, b); }
  Elem finish(const Accumulator& acc) const {
    Elem r;
    mpz_mod(r.get_mpz_t(), acc.sum.get_mpz_t(), p_.get_mpz_t());
    return r;
  }

 private:
  mpz_class p_;
};

}  // namespace dyngraph::algebra
