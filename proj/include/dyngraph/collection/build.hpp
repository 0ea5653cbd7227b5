#pragma once

#include <cstddef>
#include <span>

#include "dyngraph/collection/path_collection.hpp"
#include "dyngraph/reporting/switch_reporter.hpp"

namespace dyngraph {

// Sources in ascending id; before each source every vertex outside C with
// congestion above n h tau joins C and is switched off in T. The tree of each
// source outside C is stored (trivial paths are not). T must have W = V on
// entry; the switches are replayed back on before returning. Hop bound: T's.
PathCollection build_collection_threshold(SwitchReporter& T, double tau);

// Sources alternate between the smallest unprocessed element of C0 and the
// most congested vertex outside C (ties to the smallest id) for
// min(2|C0|, n) picks; congested() lists them in pick order. Each source is
// switched off after its tree is stored. Trees may end at earlier picks:
// pi_{c_i,t} has all intermediates in G - {c_1..c_{i-1}}. W is restored on
// return.
PathCollection build_collection_randomized(SwitchReporter& T, std::span<const Vertex> c0);

// n h tau and 2 n h tau.
double congestion_threshold(std::size_t n, std::size_t h, double tau);
double congestion_cap(std::size_t n, std::size_t h, double tau);

// c h n max(1, ln n), the randomized congestion bound with its constant.
double randomized_congestion_bound(std::size_t n, std::size_t h, double c = 4.0);

}  // namespace dyngraph
