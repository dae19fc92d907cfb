// Exact minimum feedback vertex set.
//
// Branch and bound over a dense bit-matrix copy of each strong component.
// Every node applies the classic reductions (self-loop => delete, in- or
// out-degree 0 => drop, in- or out-degree 1 => bypass), splits into strong
// components, bounds with a greedy vertex-disjoint cycle packing and finally
// branches on a shortest directed cycle c_0..c_{L-1}: branch i deletes c_i and
// makes c_0..c_{i-1} undeletable by bypassing them.

#include <algorithm>
#include <bit>
#include <optional>

#include "dichroma/solver.hpp"

namespace dichroma {

namespace {

class BitGraph {
 public:
  BitGraph() = default;

  static BitGraph from(const Digraph& d, std::span<const Vertex> labels) {
    BitGraph g(d.order());
    g.label_.assign(labels.begin(), labels.end());
    for (const auto& [u, v] : d.arcs()) g.add_arc(u, v);
    for (Vertex v = 0; v < d.order(); ++v) set(g.active_.data(), v);
    return g;
  }

  std::size_t size() const { return n_; }
  Vertex label(Vertex v) const { return label_[v]; }
  bool active(Vertex v) const { return test(active_.data(), v); }
  bool empty() const {
    return std::ranges::all_of(active_, [](std::uint64_t w) { return w == 0; });
  }
  std::size_t active_count() const { return count(active_.data()); }

  std::size_t out_degree(Vertex v) const { return count(out_row(v)); }
  std::size_t in_degree(Vertex v) const { return count(in_row(v)); }
  bool self_loop(Vertex v) const { return test(out_row(v), v); }

  template <class F>
  void for_each_active(F&& f) const {
    for_each_bit(active_.data(), f);
  }
  template <class F>
  void for_each_out(Vertex v, F&& f) const {
    for_each_bit(out_row(v), f);
  }
  template <class F>
  void for_each_in(Vertex v, F&& f) const {
    for_each_bit(in_row(v), f);
  }

  void remove(Vertex v) {
    for_each_in(v, [&](Vertex u) { reset(out_row(u), v); });
    for_each_out(v, [&](Vertex w) { reset(in_row(w), v); });
    std::fill_n(out_row(v), words_, 0);
    std::fill_n(in_row(v), words_, 0);
    reset(active_.data(), v);
  }

  /// Replaces every path u -> v -> w by an arc u -> w, then removes v.
  /// Requires v to have no self-loop.
  void bypass(Vertex v) {
    for_each_in(v, [&](Vertex u) {
      std::uint64_t* row = out_row(u);
      const std::uint64_t* vo = out_row(v);
      for (std::size_t i = 0; i < words_; ++i) row[i] |= vo[i];
    });
    for_each_out(v, [&](Vertex w) {
      std::uint64_t* row = in_row(w);
      const std::uint64_t* vi = in_row(v);
      for (std::size_t i = 0; i < words_; ++i) row[i] |= vi[i];
    });
    remove(v);
  }

  /// Vertices reachable from v (forward) or reaching v (backward), v included.
  std::vector<std::uint64_t> reach(Vertex v, bool forward) const {
    std::vector<std::uint64_t> seen(words_, 0), frontier(words_, 0), next(words_, 0);
    set(seen.data(), v);
    set(frontier.data(), v);
    for (;;) {
      std::ranges::fill(next, 0);
      for_each_bit(frontier.data(), [&](Vertex u) {
        const std::uint64_t* row = forward ? out_row(u) : in_row(u);
        for (std::size_t i = 0; i < words_; ++i) next[i] |= row[i];
      });
      bool grew = false;
      for (std::size_t i = 0; i < words_; ++i) {
        next[i] &= ~seen[i];
        seen[i] |= next[i];
        grew |= next[i] != 0;
      }
      if (!grew) return seen;
      frontier.swap(next);
    }
  }

  /// Strong components containing a cycle, each as a vertex list.
  std::vector<std::vector<Vertex>> cyclic_components() const {
    std::vector<std::uint64_t> left = active_;
    std::vector<std::vector<Vertex>> comps;
    for (std::size_t v = 0; v < n_; ++v) {
      if (!test(left.data(), static_cast<Vertex>(v))) continue;
      auto fwd = reach(static_cast<Vertex>(v), true);
      auto bwd = reach(static_cast<Vertex>(v), false);
      std::vector<Vertex> comp;
      for (std::size_t i = 0; i < words_; ++i) fwd[i] &= bwd[i];
      for_each_bit(fwd.data(), [&](Vertex u) {
        comp.push_back(u);
        reset(left.data(), u);
      });
      if (comp.size() > 1 || self_loop(static_cast<Vertex>(v))) comps.push_back(std::move(comp));
    }
    return comps;
  }

  /// Sub-bitgraph on `vs` (ascending local ids), labels carried over.
  BitGraph restrict(std::span<const Vertex> vs) const {
    BitGraph g(vs.size());
    std::vector<Vertex> local(n_, UINT32_MAX);
    for (std::size_t i = 0; i < vs.size(); ++i) {
      local[vs[i]] = static_cast<Vertex>(i);
      g.label_.push_back(label_[vs[i]]);
      set(g.active_.data(), static_cast<Vertex>(i));
    }
    for (std::size_t i = 0; i < vs.size(); ++i) {
      for_each_out(vs[i], [&](Vertex w) {
        if (local[w] != UINT32_MAX) g.add_arc(static_cast<Vertex>(i), local[w]);
      });
    }
    return g;
  }

  /// A shortest directed cycle among active vertices, by layered bit BFS
  /// from every vertex. Empty if acyclic.
  std::vector<Vertex> shortest_cycle() const {
    std::vector<Vertex> best;
    std::vector<std::vector<std::uint64_t>> layers;
    std::vector<std::uint64_t> seen(words_);
    for_each_active([&](Vertex s) {
      if (best.size() == 1 || best.size() == 2) return;
      if (self_loop(s)) {
        best.assign(1, s);
        return;
      }
      const std::uint64_t* closing = in_row(s);
      layers.assign(1, std::vector<std::uint64_t>(words_, 0));
      set(layers[0].data(), s);
      std::ranges::fill(seen, 0);
      set(seen.data(), s);
      for (std::size_t depth = 0; best.empty() || depth + 2 < best.size() + 1; ++depth) {
        // Cycle of length depth + 1 closes through the current layer.
        const auto& layer = layers[depth];
        std::optional<Vertex> last;
        for (std::size_t i = 0; i < words_ && !last; ++i) {
          if (std::uint64_t hit = layer[i] & closing[i]) {
            last = static_cast<Vertex>(i * 64 + std::countr_zero(hit));
          }
        }
        if (depth > 0 && last) {
          std::vector<Vertex> cycle(depth + 1);
          Vertex cur = *last;
          for (std::size_t k = depth; k > 0; --k) {
            cycle[k] = cur;
            // Any predecessor in the previous layer.
            const std::uint64_t* pred = in_row(cur);
            const auto& prev = layers[k - 1];
            for (std::size_t i = 0; i < words_; ++i) {
              if (std::uint64_t hit = prev[i] & pred[i]) {
                cur = static_cast<Vertex>(i * 64 + std::countr_zero(hit));
                break;
              }
            }
          }
          cycle[0] = s;
          if (best.empty() || cycle.size() < best.size()) best = std::move(cycle);
          break;
        }
        std::vector<std::uint64_t> next(words_, 0);
        for_each_bit(layer.data(), [&](Vertex u) {
          const std::uint64_t* row = out_row(u);
          for (std::size_t i = 0; i < words_; ++i) next[i] |= row[i];
        });
        bool any = false;
        for (std::size_t i = 0; i < words_; ++i) {
          next[i] &= ~seen[i];
          seen[i] |= next[i];
          any |= next[i] != 0;
        }
        if (!any) break;
        layers.push_back(std::move(next));
      }
    });
    return best;
  }

 private:
  explicit BitGraph(std::size_t n)
      : n_(n),
        words_((n + 63) / 64),
        out_(n * words_, 0),
        in_(n * words_, 0),
        active_(words_, 0) {}

  static bool test(const std::uint64_t* row, Vertex v) { return (row[v >> 6] >> (v & 63)) & 1; }
  static void set(std::uint64_t* row, Vertex v) { row[v >> 6] |= std::uint64_t{1} << (v & 63); }
  static void reset(std::uint64_t* row, Vertex v) { row[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }

  std::size_t count(const std::uint64_t* row) const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < words_; ++i) c += static_cast<std::size_t>(std::popcount(row[i]));
    return c;
  }

  template <class F>
  void for_each_bit(const std::uint64_t* row, F&& f) const {
    for (std::size_t i = 0; i < words_; ++i) {
      for (std::uint64_t w = row[i]; w != 0; w &= w - 1) {
        f(static_cast<Vertex>(i * 64 + std::countr_zero(w)));
      }
    }
  }

  void add_arc(Vertex u, Vertex v) {
    set(out_row(u), v);
    set(in_row(v), u);
  }

  std::uint64_t* out_row(Vertex v) { return out_.data() + v * words_; }
  const std::uint64_t* out_row(Vertex v) const { return out_.data() + v * words_; }
  std::uint64_t* in_row(Vertex v) { return in_.data() + v * words_; }
  const std::uint64_t* in_row(Vertex v) const { return in_.data() + v * words_; }

  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> out_, in_;
  std::vector<std::uint64_t> active_;
  std::vector<Vertex> label_;
};

// Deletes self-loop vertices (recorded in `forced`), drops sources and sinks,
// bypasses vertices of in- or out-degree one. Repeats to a fixpoint.
void reduce(BitGraph& g, std::vector<Vertex>& forced) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const auto v = static_cast<Vertex>(i);
      if (!g.active(v)) continue;
      if (g.self_loop(v)) {
        forced.push_back(g.label(v));
        g.remove(v);
        changed = true;
        continue;
      }
      const std::size_t in = g.in_degree(v), out = g.out_degree(v);
      if (in == 0 || out == 0) {
        g.remove(v);
        changed = true;
      } else if (in == 1 || out == 1) {
        // Some optimum avoids v: swap it for its unique predecessor/successor.
        g.bypass(v);
        changed = true;
      }
    }
  }
}

std::size_t packing_bound(BitGraph g) {
  std::size_t count = 0;
  for (;;) {
    auto cycle = g.shortest_cycle();
    if (cycle.empty()) return count;
    ++count;
    for (Vertex v : cycle) g.remove(v);
  }
}

class FvsSearch {
 public:
  explicit FvsSearch(BudgetTracker& tracker) : tracker_(tracker) {}

  bool aborted() const { return aborted_; }

  /// A minimum FVS (labels) if one of size < ub exists.
  std::optional<std::vector<Vertex>> solve(BitGraph g, std::size_t ub) {
    if (!tracker_.tick()) {
      aborted_ = true;
      return std::nullopt;
    }
    std::vector<Vertex> forced;
    reduce(g, forced);
    if (forced.size() >= ub) return std::nullopt;
    if (g.empty()) return forced;

    auto comps = g.cyclic_components();
    if (comps.empty()) return forced;
    if (comps.size() > 1) return solve_components(g, comps, std::move(forced), ub);
    if (comps[0].size() != g.active_count()) g = g.restrict(comps[0]);

    if (forced.size() + packing_bound(g) >= ub) return std::nullopt;

    const auto cycle = g.shortest_cycle();
    std::optional<std::vector<Vertex>> best;
    for (std::size_t i = 0; i < cycle.size() && !aborted_; ++i) {
      BitGraph h = g;
      h.remove(cycle[i]);
      bool feasible = true;
      for (std::size_t j = 0; j < i && feasible; ++j) {
        if (h.self_loop(cycle[j])) {
          feasible = false;
        } else {
          h.bypass(cycle[j]);
        }
      }
      // Later branches bypass a superset, so they are infeasible as well.
      if (!feasible) break;
      if (forced.size() + 1 >= ub) break;
      auto sub = solve(std::move(h), ub - forced.size() - 1);
      if (sub) {
        sub->push_back(g.label(cycle[i]));
        ub = forced.size() + sub->size();
        best = std::move(sub);
      }
    }
    if (!best) return std::nullopt;
    best->insert(best->end(), forced.begin(), forced.end());
    return best;
  }

 private:
  std::optional<std::vector<Vertex>> solve_components(const BitGraph& g,
                                                      const std::vector<std::vector<Vertex>>& comps,
                                                      std::vector<Vertex> result, std::size_t ub) {
    std::vector<BitGraph> parts;
    std::vector<std::size_t> bounds;
    std::size_t remaining = 0;
    for (const auto& c : comps) {
      parts.push_back(g.restrict(c));
      bounds.push_back(packing_bound(parts.back()));
      remaining += bounds.back();
    }
    if (result.size() + remaining >= ub) return std::nullopt;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      remaining -= bounds[i];
      auto sub = solve(std::move(parts[i]), ub - result.size() - remaining);
      if (!sub) return std::nullopt;
      result.insert(result.end(), sub->begin(), sub->end());
    }
    return result;
  }

  BudgetTracker& tracker_;
  bool aborted_ = false;
};

}  // namespace

VertexSet greedy_fvs(const Digraph& d) {
  const std::size_t n = d.order();
  std::vector<char> gone(n, 0);
  std::vector<Vertex> picked;
  for (;;) {
    VertexSet keep;
    for (Vertex v = 0; v < n; ++v) {
      if (!gone[v]) keep.push_back(v);
    }
    auto sub = induced_subdigraph(d, keep);
    std::optional<Vertex> choice;
    std::size_t best_score = 0;
    for (const auto& scc : strongly_connected_components(sub.graph)) {
      if (scc.size() < 2) continue;
      auto comp = induced_subdigraph(sub.graph, scc);
      for (Vertex i = 0; i < comp.graph.order(); ++i) {
        const std::size_t score = comp.graph.in_degree(i) * comp.graph.out_degree(i);
        const Vertex v = sub.to_parent[comp.to_parent[i]];
        if (!choice || score > best_score || (score == best_score && v < *choice)) {
          choice = v;
          best_score = score;
        }
      }
    }
    if (!choice) break;
    gone[*choice] = 1;
    picked.push_back(*choice);
  }
  // Drop vertices that are not needed, most recent pick first.
  for (auto it = picked.rbegin(); it != picked.rend(); ++it) {
    gone[*it] = 0;
    VertexSet keep;
    for (Vertex v = 0; v < n; ++v) {
      if (!gone[v]) keep.push_back(v);
    }
    if (!is_acyclic_induced(d, keep)) gone[*it] = 1;
  }
  VertexSet result;
  for (Vertex v = 0; v < n; ++v) {
    if (gone[v]) result.push_back(v);
  }
  return result;
}

FvsResult min_fvs_exact(const Digraph& d, const SolverBudget& budget) {
  BudgetTracker tracker(budget);
  FvsSearch search(tracker);
  FvsResult result;
  for (const auto& scc : strongly_connected_components(d)) {
    if (scc.size() < 2) continue;
    auto comp = induced_subdigraph(d, scc);
    VertexSet greedy = greedy_fvs(comp.graph);
    for (Vertex& v : greedy) v = comp.to_parent[v];
    BitGraph g = BitGraph::from(comp.graph, comp.to_parent);
    const std::size_t lb = packing_bound(g);
    std::optional<std::vector<Vertex>> exact;
    if (!search.aborted() && lb < greedy.size()) exact = search.solve(std::move(g), greedy.size());
    if (exact) {
      result.lower += exact->size();
      result.witness.insert(result.witness.end(), exact->begin(), exact->end());
    } else {
      // Either the greedy set is optimal or the search ran out of budget.
      result.lower += search.aborted() ? lb : greedy.size();
      result.witness.insert(result.witness.end(), greedy.begin(), greedy.end());
    }
  }
  std::ranges::sort(result.witness);
  result.upper = result.witness.size();
  result.nodes = tracker.nodes();
  result.outcome = search.aborted() ? Outcome::undecided : Outcome::decided;
  if (!search.aborted()) result.lower = result.upper;
  return result;
}

AcyclicSetResult max_acyclic_set_exact(const Digraph& d, const SolverBudget& budget) {
  const FvsResult fvs = min_fvs_exact(d, budget);
  AcyclicSetResult result;
  result.outcome = fvs.outcome;
  result.lower = d.order() - fvs.upper;
  result.upper = d.order() - fvs.lower;
  result.nodes = fvs.nodes;
  std::size_t j = 0;
  for (Vertex v = 0; v < d.order(); ++v) {
    if (j < fvs.witness.size() && fvs.witness[j] == v) {
      ++j;
    } else {
      result.witness.push_back(v);
    }
  }
  return result;
}

}  // namespace dichroma
