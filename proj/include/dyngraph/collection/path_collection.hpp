#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "dyngraph/graph/types.hpp"

namespace dyngraph {

struct StoredPath {
  Vertex s = 0;
  Vertex t = 0;
  std::vector<Vertex> vertices;  // s ... t
  Vertex beta = kNoVertex;       // representative hit, if any
  bool affected = false;

  std::size_t length() const { return vertices.size() - 1; }
};

// At most one stored path per ordered pair, with per-vertex congestion
// (every vertex of every stored path, endpoints included), the congested set
// C and the affected subset.
class PathCollection {
 public:
  PathCollection() = default;
  explicit PathCollection(std::size_t n);

  std::size_t num_vertices() const { return n_; }
  std::size_t size() const { return paths_.size(); }
  const std::vector<StoredPath>& paths() const { return paths_; }

  // Stores the path vertices.front() -> vertices.back(); throws if the pair
  // already has a path or the path repeats a vertex.
  std::size_t add(std::vector<Vertex> vertices);
  const StoredPath* find(Vertex s, Vertex t) const;
  std::size_t id_of(Vertex s, Vertex t) const;  // SIZE_MAX when absent

  std::uint64_t congestion(Vertex v) const { return alpha_[v]; }
  std::uint64_t max_congestion() const;
  const std::vector<std::size_t>& paths_through(Vertex v) const { return through_[v]; }

  const std::vector<Vertex>& congested() const { return congested_; }
  bool is_congested(Vertex v) const { return in_c_[v] != 0; }
  void add_congested(Vertex v);

  void set_representative(std::size_t id, Vertex v) { paths_[id].beta = v; }

  // Marks every stored path through v as affected; returns the pairs that
  // were not affected before.
  std::vector<std::pair<Vertex, Vertex>> mark_affected(Vertex v);
  std::size_t affected_count() const { return affected_; }

 private:
  std::size_t n_ = 0;
  std::vector<StoredPath> paths_;
  std::vector<std::uint32_t> slot_;  // n*n, 0 = none, else id + 1
  std::vector<std::uint64_t> alpha_;
  std::vector<std::vector<std::size_t>> through_;
  std::vector<Vertex> congested_;
  std::vector<std::uint8_t> in_c_;
  std::size_t affected_ = 0;
};

}  // namespace dyngraph
