#include "dichroma/digraph.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace dichroma {

namespace {

constexpr std::size_t kUnseen = std::numeric_limits<std::size_t>::max();

void check_vertex(const Digraph& d, Vertex v) {
  if (!d.contains(v)) {
    throw InputError("vertex " + std::to_string(v) + " out of range (n = " +
                     std::to_string(d.order()) + ")");
  }
}

// Sorted neighbors in the underlying simple graph (digons collapse to one edge).
std::vector<std::vector<Vertex>> underlying_adjacency(const Digraph& d) {
  std::vector<std::vector<Vertex>> adj(d.order());
  for (Vertex v = 0; v < d.order(); ++v) {
    auto& a = adj[v];
    a.reserve(d.out_degree(v) + d.in_degree(v));
    std::ranges::set_union(d.out(v), d.in(v), std::back_inserter(a));
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  return adj;
}

}  // namespace

Digraph::Digraph(std::size_t n) : n_(n), out_offsets_(n + 1, 0), in_offsets_(n + 1, 0) {}

Digraph::Digraph(std::size_t n, std::vector<Arc> arcs) : n_(n), arcs_(std::move(arcs)) {
  for (const auto& [u, v] : arcs_) {
    if (u >= n || v >= n) {
      throw InputError("arc (" + std::to_string(u) + "," + std::to_string(v) +
                       ") has an endpoint outside 0.." + std::to_string(n) + "-1");
    }
    if (u == v) throw InputError("loop at vertex " + std::to_string(u));
  }
  std::ranges::sort(arcs_);
  if (auto it = std::ranges::adjacent_find(arcs_); it != arcs_.end()) {
    throw InputError("parallel arc (" + std::to_string(it->first) + "," +
                     std::to_string(it->second) + ")");
  }

  out_offsets_.assign(n + 1, 0);
  in_offsets_.assign(n + 1, 0);
  for (const auto& [u, v] : arcs_) {
    ++out_offsets_[u + 1];
    ++in_offsets_[v + 1];
  }
  for (std::size_t i = 0; i < n; ++i) {
    out_offsets_[i + 1] += out_offsets_[i];
    in_offsets_[i + 1] += in_offsets_[i];
  }
  out_targets_.resize(arcs_.size());
  in_sources_.resize(arcs_.size());
  std::vector<std::size_t> out_fill(out_offsets_.begin(), out_offsets_.end() - 1);
  std::vector<std::size_t> in_fill(in_offsets_.begin(), in_offsets_.end() - 1);
  // Arcs are sorted by (u, v), so both fills produce sorted lists.
  for (const auto& [u, v] : arcs_) {
    out_targets_[out_fill[u]++] = v;
    in_sources_[in_fill[v]++] = u;
  }
}

bool Digraph::has_arc(Vertex u, Vertex v) const {
  if (u >= n_ || v >= n_) return false;
  auto o = out(u);
  return std::binary_search(o.begin(), o.end(), v);
}

Degrees degrees(const Digraph& d, Vertex v) {
  check_vertex(d, v);
  Degrees r{d.out_degree(v), d.in_degree(v), 0};
  r.total = r.out + r.in;
  return r;
}

std::size_t max_total_degree(const Digraph& d) {
  std::size_t best = 0;
  for (Vertex v = 0; v < d.order(); ++v) {
    best = std::max(best, d.out_degree(v) + d.in_degree(v));
  }
  return best;
}

std::vector<VertexSet> strongly_connected_components(const Digraph& d) {
  const std::size_t n = d.order();
  std::vector<std::size_t> index(n, kUnseen), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<Vertex> stack;
  std::vector<VertexSet> sccs;
  std::size_t next_index = 0;

  // Iterative Tarjan: frame = (vertex, position in its out-list).
  std::vector<std::pair<Vertex, std::size_t>> frames;
  for (Vertex root = 0; root < n; ++root) {
    if (index[root] != kUnseen) continue;
    frames.emplace_back(root, 0);
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      auto succ = d.out(v);
      if (pos < succ.size()) {
        Vertex w = succ[pos++];
        if (index[w] == kUnseen) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const Vertex done = v;
      frames.pop_back();
      if (!frames.empty()) {
        Vertex parent = frames.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
      if (low[done] == index[done]) {
        VertexSet comp;
        Vertex w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != done);
        std::ranges::sort(comp);
        sccs.push_back(std::move(comp));
      }
    }
  }
  // Tarjan emits sinks first.
  std::ranges::reverse(sccs);
  return sccs;
}

bool is_acyclic_induced(const Digraph& d, std::span<const Vertex> s) {
  const std::size_t n = d.order();
  std::vector<char> in_set(n, 0);
  for (Vertex v : s) {
    check_vertex(d, v);
    in_set[v] = 1;
  }
  std::vector<std::size_t> indeg(n, 0);
  std::vector<Vertex> ready;
  std::size_t members = 0;
  for (Vertex v = 0; v < n; ++v) {
    if (!in_set[v]) continue;
    ++members;
    for (Vertex u : d.in(v)) indeg[v] += in_set[u];
    if (indeg[v] == 0) ready.push_back(v);
  }
  std::size_t removed = 0;
  while (!ready.empty()) {
    Vertex v = ready.back();
    ready.pop_back();
    ++removed;
    for (Vertex w : d.out(v)) {
      if (in_set[w] && --indeg[w] == 0) ready.push_back(w);
    }
  }
  return removed == members;
}

bool is_acyclic(const Digraph& d) {
  std::vector<Vertex> all(d.order());
  for (Vertex v = 0; v < d.order(); ++v) all[v] = v;
  return is_acyclic_induced(d, all);
}

std::optional<std::size_t> girth(const Digraph& d) {
  if (count_digons(d) > 0) return 2;
  const std::size_t n = d.order();
  const auto adj = underlying_adjacency(d);
  std::size_t best = kUnseen;
  std::vector<std::size_t> dist(n, kUnseen);
  std::vector<Vertex> parent(n), queue, touched;
  for (Vertex root = 0; root < n; ++root) {
    queue.assign(1, root);
    dist[root] = 0;
    parent[root] = root;
    touched.assign(1, root);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      Vertex u = queue[head];
      // Any cycle found past this depth cannot beat the current best.
      if (best != kUnseen && 2 * dist[u] >= best) break;
      for (Vertex w : adj[u]) {
        if (dist[w] == kUnseen) {
          dist[w] = dist[u] + 1;
          parent[w] = u;
          queue.push_back(w);
          touched.push_back(w);
        } else if (w != parent[u]) {
          best = std::min(best, dist[u] + dist[w] + 1);
        }
      }
    }
    for (Vertex v : touched) dist[v] = kUnseen;
  }
  if (best == kUnseen) return std::nullopt;
  return best;
}

std::optional<CycleWitness> shortest_dicycle_through(const Digraph& d, Vertex s,
                                                     std::size_t max_length) {
  check_vertex(d, s);
  const std::size_t n = d.order();
  if (d.in_degree(s) == 0 || d.out_degree(s) == 0 || max_length < 2) return std::nullopt;
  std::vector<std::size_t> dist(n, kUnseen);
  std::vector<Vertex> parent(n, s);
  std::vector<Vertex> queue{s};
  dist[s] = 0;
  std::vector<char> closes(n, 0);
  for (Vertex u : d.in(s)) closes[u] = 1;
  std::optional<Vertex> last;
  for (std::size_t head = 0; head < queue.size() && !last; ++head) {
    // Process a whole BFS layer before deciding, so the smallest closing
    // vertex of minimum depth wins.
    const std::size_t layer = dist[queue[head]];
    if (layer + 1 > max_length) break;
    std::size_t end = head;
    while (end < queue.size() && dist[queue[end]] == layer) ++end;
    for (std::size_t i = head; i < end; ++i) {
      Vertex u = queue[i];
      if (closes[u] && (!last || u < *last)) last = u;
    }
    if (last) break;
    for (std::size_t i = head; i < end; ++i) {
      Vertex u = queue[i];
      for (Vertex w : d.out(u)) {
        if (dist[w] != kUnseen) continue;
        dist[w] = layer + 1;
        parent[w] = u;
        queue.push_back(w);
      }
    }
    head = end - 1;
  }
  if (!last) return std::nullopt;
  CycleWitness c{{}, true};
  for (Vertex v = *last; v != s; v = parent[v]) c.vertices.push_back(v);
  c.vertices.push_back(s);
  std::ranges::reverse(c.vertices);
  return c;
}

std::optional<std::size_t> digirth(const Digraph& d) {
  std::size_t best = kUnseen;
  for (Vertex s = 0; s < d.order(); ++s) {
    auto c = shortest_dicycle_through(d, s, best == kUnseen ? kUnseen : best - 1);
    if (c) best = c->length();
    if (best == 2) break;
  }
  if (best == kUnseen) return std::nullopt;
  return best;
}

CycleEnumeration enumerate_short_cycles(const Digraph& d, std::size_t g, std::size_t cap) {
  if (g < 3) throw InputError("enumerate_short_cycles requires g >= 3");
  const std::size_t n = d.order();
  const auto adj = underlying_adjacency(d);
  CycleEnumeration result;
  std::vector<char> on_path(n, 0);
  std::vector<Vertex> path;

  // Returns false once the cap is exceeded.
  auto emit = [&](std::vector<Vertex> vs) {
    ++result.count;
    if (result.count > cap) {
      result.overflow = true;
      return false;
    }
    result.cycles.push_back(CycleWitness{std::move(vs), false});
    return true;
  };

  // Explicit DFS stack: position within adj[path.back()].
  std::vector<std::size_t> pos;
  for (Vertex s = 0; s < n; ++s) {
    path.assign(1, s);
    pos.assign(1, 0);
    on_path[s] = 1;
    while (!path.empty()) {
      Vertex u = path.back();
      std::size_t& i = pos.back();
      if (i == adj[u].size()) {
        on_path[u] = 0;
        path.pop_back();
        pos.pop_back();
        continue;
      }
      Vertex w = adj[u][i++];
      if (w == s) {
        bool cycle = false;
        if (path.size() == 2) {
          cycle = d.has_arc(path[0], path[1]) && d.has_arc(path[1], path[0]);
        } else if (path.size() >= 3) {
          cycle = path[1] < path.back();
        }
        if (cycle && !emit(path)) return result;
        continue;
      }
      if (w < s || on_path[w] || path.size() + 1 >= g) continue;
      path.push_back(w);
      pos.push_back(0);
      on_path[w] = 1;
    }
  }
  return result;
}

bool is_valid_cycle(const Digraph& d, const CycleWitness& c) {
  const auto& vs = c.vertices;
  if (vs.size() < 2) return false;
  std::vector<Vertex> sorted = vs;
  std::ranges::sort(sorted);
  if (std::ranges::adjacent_find(sorted) != sorted.end()) return false;
  if (!d.contains(sorted.back())) return false;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    Vertex a = vs[i], b = vs[(i + 1) % vs.size()];
    if (c.directed) {
      if (!d.has_arc(a, b)) return false;
    } else if (!d.has_arc(a, b) && !d.has_arc(b, a)) {
      return false;
    }
  }
  if (vs.size() == 2 && !c.directed) {
    return d.has_arc(vs[0], vs[1]) && d.has_arc(vs[1], vs[0]);
  }
  return true;
}

VertexSet normalize_vertex_set(std::span<const Vertex> s, std::size_t n) {
  VertexSet out(s.begin(), s.end());
  std::ranges::sort(out);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (!out.empty() && out.back() >= n) {
    throw InputError("vertex " + std::to_string(out.back()) + " out of range (n = " +
                     std::to_string(n) + ")");
  }
  return out;
}

InducedSubdigraph induced_subdigraph(const Digraph& d, std::span<const Vertex> s) {
  VertexSet keep = normalize_vertex_set(s, d.order());
  std::vector<Vertex> local(d.order(), std::numeric_limits<Vertex>::max());
  for (std::size_t i = 0; i < keep.size(); ++i) local[keep[i]] = static_cast<Vertex>(i);
  std::vector<Arc> arcs;
  for (Vertex u : keep) {
    for (Vertex v : d.out(u)) {
      if (local[v] != std::numeric_limits<Vertex>::max()) arcs.emplace_back(local[u], local[v]);
    }
  }
  return {Digraph(keep.size(), std::move(arcs)), std::move(keep)};
}

InducedSubdigraph remove_vertices(const Digraph& d, std::span<const Vertex> removed) {
  VertexSet gone = normalize_vertex_set(removed, d.order());
  VertexSet keep;
  keep.reserve(d.order() - gone.size());
  std::size_t j = 0;
  for (Vertex v = 0; v < d.order(); ++v) {
    if (j < gone.size() && gone[j] == v) {
      ++j;
      continue;
    }
    keep.push_back(v);
  }
  return induced_subdigraph(d, keep);
}

Digraph relabel(const Digraph& d, std::span<const Vertex> perm) {
  if (perm.size() != d.order()) throw InputError("relabel: permutation has wrong size");
  std::vector<char> seen(d.order(), 0);
  for (Vertex v : perm) {
    if (v >= d.order() || seen[v]) throw InputError("relabel: not a permutation");
    seen[v] = 1;
  }
  std::vector<Arc> arcs;
  arcs.reserve(d.arc_count());
  for (const auto& [u, v] : d.arcs()) arcs.emplace_back(perm[u], perm[v]);
  return Digraph(d.order(), std::move(arcs));
}

std::size_t count_digons(const Digraph& d) {
  std::size_t count = 0;
  for (const auto& [u, v] : d.arcs()) {
    if (u < v && d.has_arc(v, u)) ++count;
  }
  return count;
}

}  // namespace dichroma
