#pragma once

#include <atomic>
#include <cstdint>

namespace dyngraph::algebra {

struct OpCounts {
  std::uint64_t mul = 0;
  std::uint64_t add = 0;

  OpCounts operator-(const OpCounts& o) const { return {mul - o.mul, add - o.add}; }
  std::uint64_t total() const { return mul + add; }
};

// Process-wide ring operation counters. Kernels tally locally and publish
// once per call, so the relaxed atomics stay off the inner loops.
class OpCounter {
 public:
  static void add_mul(std::uint64_t n) { mul_.fetch_add(n, std::memory_order_relaxed); }
  static void add_add(std::uint64_t n) { add_.fetch_add(n, std::memory_order_relaxed); }
  static OpCounts snapshot() {
    return {mul_.load(std::memory_order_relaxed), add_.load(std::memory_order_relaxed)};
  }

 private:
  static inline std::atomic<std::uint64_t> mul_{0};
  static inline std::atomic<std::uint64_t> add_{0};
};

}  // namespace dyngraph::algebra
