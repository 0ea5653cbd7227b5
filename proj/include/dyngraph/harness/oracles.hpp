#pragma once

#include <vector>

#include <gmpxx.h>

#include "dyngraph/graph/digraph.hpp"
#include "dyngraph/graph/types.hpp"

namespace dyngraph::harness {

// Breadth-first search truncated at h hops (h < 0 means unbounded).
std::vector<Dist> oracle_bfs_h(const Digraph& g, Vertex s, int h);

// Floyd-Warshall on unit weights; entry [s][t].
std::vector<std::vector<Dist>> oracle_apsp(const Digraph& g);

// Reachability matrix from Floyd-Warshall.
std::vector<std::vector<bool>> oracle_reachability(const Digraph& g);

// Number of s -> t walks of each length 0..h, by repeated adjacency powering
// over big integers.
std::vector<mpz_class> oracle_walk_counts(const Digraph& g, Vertex s, Vertex t, int h);

// Same counts by explicit depth-first walk enumeration (small inputs only).
std::vector<mpz_class> oracle_walk_enumeration(const Digraph& g, Vertex s, Vertex t, int h);

// True when path is a walk in g from s to t (consecutive pairs are edges).
bool is_valid_path(const Digraph& g, const std::vector<Vertex>& path, Vertex s, Vertex t);

}  // namespace dyngraph::harness
