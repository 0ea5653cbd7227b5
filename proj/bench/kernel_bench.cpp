// Serial reference kernels against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include <random>

#include "dyngraph/algebra/fields.hpp"
#include "dyngraph/algebra/kernels.hpp"
#include "dyngraph/apsp/minplus.hpp"
#include "dyngraph/tc/dynamic_tc.hpp"

using namespace dyngraph;

namespace {

constexpr std::uint64_t kPrime = 2147483647;

algebra::PolyMatrix<algebra::WordField> random_poly(const algebra::PolyRing<algebra::WordField>& ring,
                                                   std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  algebra::PolyMatrix<algebra::WordField> m(n, n, ring.degree_bound());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t p = 0; p <= ring.degree_bound(); ++p) m.at(i, j)[p] = ring.field().from_uint(rng() % kPrime);
  return m;
}

apsp::DistMatrix random_dist(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  apsp::DistMatrix m(n, n);
  for (auto& x : m.v) x = rng() % 4 == 0 ? apsp::kInf : double(rng() % 100);
  return m;
}

tc::BoolMatrix random_bool(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  tc::BoolMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.set(i, j, rng() % 8 == 0);
  return m;
}

template <bool Parallel>
void BM_PolyGemm(benchmark::State& state) {
  const std::size_t n = state.range(0);
  const algebra::PolyRing<algebra::WordField> ring(algebra::WordField(kPrime), 4);
  const auto a = random_poly(ring, n, 1), b = random_poly(ring, n, 2);
  for (auto _ : state) {
    auto c = Parallel ? algebra::mat_mul_classical(ring, a, b) : algebra::mat_mul_reference(ring, a, b);
    benchmark::DoNotOptimize(c);
  }
}

template <bool Parallel>
void BM_Minplus(benchmark::State& state) {
  const std::size_t n = state.range(0);
  const auto a = random_dist(n, 3), b = random_dist(n, 4);
  for (auto _ : state) {
    auto c = Parallel ? apsp::parallel::minplus(a, b) : apsp::serial::minplus(a, b);
    benchmark::DoNotOptimize(c);
  }
}

template <bool Parallel>
void BM_BoolMultiply(benchmark::State& state) {
  const std::size_t n = state.range(0);
  const auto a = random_bool(n, 5), b = random_bool(n, 6);
  for (auto _ : state) {
    auto c = Parallel ? tc::parallel::multiply(a, b) : tc::serial::multiply(a, b);
    benchmark::DoNotOptimize(c);
  }
}

}  // namespace

BENCHMARK(BM_PolyGemm<false>)->Arg(16)->Arg(32)->Arg(64);
BENCHMARK(BM_PolyGemm<true>)->Arg(16)->Arg(32)->Arg(64);
BENCHMARK(BM_Minplus<false>)->Arg(32)->Arg(64)->Arg(128);
BENCHMARK(BM_Minplus<true>)->Arg(32)->Arg(64)->Arg(128);
BENCHMARK(BM_BoolMultiply<false>)->Arg(64)->Arg(256)->Arg(1024);
BENCHMARK(BM_BoolMultiply<true>)->Arg(64)->Arg(256)->Arg(1024);

BENCHMARK_MAIN();
