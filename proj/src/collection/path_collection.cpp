#include "dyngraph/collection/path_collection.hpp"

#include <algorithm>
#include <stdexcept>

#include "dyngraph/graph/digraph.hpp"

namespace dyngraph {

PathCollection::PathCollection(std::size_t n)
    : n_(n), slot_(n * n, 0), alpha_(n, 0), through_(n), in_c_(n, 0) {}

std::size_t PathCollection::add(std::vector<Vertex> vertices) {
  if (vertices.empty()) throw std::invalid_argument("empty path");
  for (Vertex v : vertices) check_vertex(n_, v);
  const Vertex s = vertices.front(), t = vertices.back();
  std::uint32_t& slot = slot_[std::size_t{s} * n_ + t];
  if (slot != 0) throw std::invalid_argument("pair already has a stored path");
  std::vector<Vertex> sorted = vertices;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("stored paths must be simple");
  const std::size_t id = paths_.size();
  for (Vertex v : vertices) {
    ++alpha_[v];
    through_[v].push_back(id);
  }
  paths_.push_back({s, t, std::move(vertices), kNoVertex, false});
  slot = static_cast<std::uint32_t>(id + 1);
  return id;
}

const StoredPath* PathCollection::find(Vertex s, Vertex t) const {
  const std::size_t id = id_of(s, t);
  return id == SIZE_MAX ? nullptr : &paths_[id];
}

std::size_t PathCollection::id_of(Vertex s, Vertex t) const {
  const std::uint32_t slot = slot_[std::size_t{s} * n_ + t];
  return slot == 0 ? SIZE_MAX : slot - 1;
}

std::uint64_t PathCollection::max_congestion() const {
  return alpha_.empty() ? 0 : *std::max_element(alpha_.begin(), alpha_.end());
}

void PathCollection::add_congested(Vertex v) {
  check_vertex(n_, v);
  if (in_c_[v]) return;
  in_c_[v] = 1;
  congested_.push_back(v);
}

std::vector<std::pair<Vertex, Vertex>> PathCollection::mark_affected(Vertex v) {
  check_vertex(n_, v);
  std::vector<std::pair<Vertex, Vertex>> out;
  for (std::size_t id : through_[v]) {
    StoredPath& p = paths_[id];
    if (p.affected) continue;
    p.affected = true;
    ++affected_;
    out.emplace_back(p.s, p.t);
  }
  return out;
}

}  // namespace dyngraph
