#include "dichroma/core_peeling.hpp"

#include <deque>

namespace dichroma {

VertexSet two_two_core(const Digraph& d, PeelOrder order) {
  const std::size_t n = d.order();
  std::vector<std::size_t> out_deg(n), in_deg(n);
  std::vector<char> alive(n, 1), queued(n, 0);
  std::deque<Vertex> queue;
  auto visit = [&](Vertex v) {
    if (alive[v] && !queued[v] && (out_deg[v] < 2 || in_deg[v] < 2)) {
      queued[v] = 1;
      queue.push_back(v);
    }
  };
  for (Vertex v = 0; v < n; ++v) {
    out_deg[v] = d.out_degree(v);
    in_deg[v] = d.in_degree(v);
  }
  for (std::size_t i = 0; i < n; ++i) {
    visit(order == PeelOrder::ascending ? static_cast<Vertex>(i) : static_cast<Vertex>(n - 1 - i));
  }
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    alive[v] = 0;
    for (Vertex w : d.out(v)) {
      if (alive[w]) {
        --in_deg[w];
        visit(w);
      }
    }
    for (Vertex u : d.in(v)) {
      if (alive[u]) {
        --out_deg[u];
        visit(u);
      }
    }
  }
  VertexSet core;
  for (Vertex v = 0; v < n; ++v) {
    if (alive[v]) core.push_back(v);
  }
  return core;
}

}  // namespace dichroma
