#include "dyngraph/graph/scc.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace dyngraph {

SccDecomposition strongly_connected_components(const Digraph& g) {
  const std::size_t n = g.num_vertices();
  constexpr std::uint32_t kUnvisited = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> index(n, kUnvisited), low(n, 0);
  std::vector<std::uint8_t> on_stack(n, 0);
  std::vector<Vertex> stack;
  std::vector<std::vector<Vertex>> reverse_topo;
  std::uint32_t next_index = 0;

  struct Frame {
    Vertex v;
    Vertex next;
  };
  std::vector<Frame> call;
  for (Vertex root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call.push_back({root, 0});
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      Frame& fr = call.back();
      const Vertex v = fr.v;
      bool descended = false;
      while (fr.next < n) {
        const Vertex w = fr.next++;
        if (!g.has_edge(v, w)) continue;
        if (index[w] == kUnvisited) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
          descended = true;
          break;
        }
        if (on_stack[w]) low[v] = std::min(low[v], index[w]);
      }
      if (descended) continue;
      if (low[v] == index[v]) {
        std::vector<Vertex> comp;
        Vertex w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        reverse_topo.push_back(std::move(comp));
      }
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
    }
  }

  SccDecomposition out;
  out.component.assign(n, 0);
  out.members.assign(reverse_topo.rbegin(), reverse_topo.rend());
  for (std::uint32_t c = 0; c < out.members.size(); ++c)
    for (Vertex v : out.members[c]) out.component[v] = c;
  return out;
}

Digraph scc_skeleton(const Digraph& g, const SccDecomposition& scc) {
  Digraph out(g.num_vertices());
  const std::size_t n = g.num_vertices();
  for (const auto& comp : scc.members) {
    if (comp.size() < 2) continue;
    const Vertex root = comp.front();
    const std::uint32_t c = scc.component[root];
    // BFS forward gives the out-tree, BFS on reversed edges the in-tree.
    for (int dir = 0; dir < 2; ++dir) {
      std::vector<std::uint8_t> seen(n, 0);
      std::deque<Vertex> queue{root};
      seen[root] = 1;
      while (!queue.empty()) {
        const Vertex x = queue.front();
        queue.pop_front();
        for (Vertex y : comp) {
          if (seen[y]) continue;
          const bool edge = dir == 0 ? g.has_edge(x, y) : g.has_edge(y, x);
          if (!edge || scc.component[y] != c) continue;
          seen[y] = 1;
          if (dir == 0)
            out.set_edge(x, y, true);
          else
            out.set_edge(y, x, true);
          queue.push_back(y);
        }
      }
    }
  }
  return out;
}

}  // namespace dyngraph
