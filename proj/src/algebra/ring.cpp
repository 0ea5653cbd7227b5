#include "dyngraph/algebra/ring.hpp"

#include <array>
#include <random>
#include <stdexcept>

namespace dyngraph::algebra {

namespace {

constexpr std::array<unsigned, 13> kBases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

const mpz_class& deterministic_limit() {
  static const mpz_class limit("3317044064679887385961981");
  return limit;
}

bool miller_rabin(const mpz_class& m) {
  mpz_class d = m - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  const mpz_class m_minus_one = m - 1;
  mpz_class x;
  for (unsigned base : kBases) {
    mpz_class a = base;
    if (a % m == 0) continue;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), m.get_mpz_t());
    if (x == 1 || x == m_minus_one) continue;
    bool composite = true;
    for (unsigned long r = 1; r < s; ++r) {
      mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), 2, m.get_mpz_t());
      if (x == m_minus_one) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace

bool is_prime(const mpz_class& m) {
  if (m < 2) return false;
  for (unsigned p : kBases) {
    if (m == p) return true;
    if (m % p == 0) return false;
  }
  if (!miller_rabin(m)) return false;
  if (m < deterministic_limit()) return true;
  return mpz_probab_prime_p(m.get_mpz_t(), 25) != 0;
}

Ring::Ring(mpz_class modulus, Representation representation)
    : modulus_(std::move(modulus)), representation_(representation) {
  if (!is_prime(modulus_)) throw std::invalid_argument("ring modulus is not prime: " + modulus_.get_str());
}

bool Ring::fits_word() const {
  return mpz_odd_p(modulus_.get_mpz_t()) && mpz_sizeinbase(modulus_.get_mpz_t(), 2) <= 63;
}

std::uint64_t Ring::word_modulus() const {
  if (mpz_sizeinbase(modulus_.get_mpz_t(), 2) > 64) throw std::logic_error("modulus exceeds a machine word");
  return mpz_get_ui(modulus_.get_mpz_t());
}

Ring ring_deterministic(std::uint64_t n, std::uint32_t h) {
  if (n < 1 || h < 1) throw std::invalid_argument("ring_deterministic requires n >= 1 and h >= 1");
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), n, h);
  while (!is_prime(p)) ++p;
  return Ring(p, Representation::kArbitrary);
}

Ring ring_randomized(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> dist(std::uint64_t{1} << 30, std::uint64_t{1} << 31);
  for (;;) {
    mpz_class candidate = static_cast<unsigned long>(dist(rng));
    if (is_prime(candidate)) return Ring(candidate, Representation::kWord);
  }
}

}  // namespace dyngraph::algebra
