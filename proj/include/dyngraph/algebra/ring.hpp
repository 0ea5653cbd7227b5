#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace dyngraph::algebra {

enum class Representation { kWord, kArbitrary };

// Deterministic Miller-Rabin over the first 13 prime bases. That base set is
// proven correct below 3.3e24; larger inputs are additionally run through
// GMP's Baillie-PSW test.
bool is_prime(const mpz_class& m);

// A prime modulus plus the preferred element representation.
class Ring {
 public:
  Ring(mpz_class modulus, Representation representation);

  const mpz_class& modulus() const { return modulus_; }
  Representation representation() const { return representation_; }

  // True when Montgomery word arithmetic applies (odd p below 2^63).
  bool fits_word() const;
  std::uint64_t word_modulus() const;
  std::string to_string() const { return modulus_.get_str(); }

 private:
  mpz_class modulus_;
  Representation representation_;
};

// First prime p >= n^h; Bertrand's postulate puts it at or below 2 n^h.
Ring ring_deterministic(std::uint64_t n, std::uint32_t h);

// Prime sampled uniformly from [2^30, 2^31] by rejection; fixed by the seed.
Ring ring_randomized(std::uint64_t seed);

}  // namespace dyngraph::algebra
