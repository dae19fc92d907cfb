#include "dichroma/erdos_posa.hpp"

#include <algorithm>
#include <bit>

namespace dichroma {

std::optional<CycleWitness> shortest_dicycle(const Digraph& d) {
  std::optional<CycleWitness> best;
  for (Vertex s = 0; s < d.order(); ++s) {
    const std::size_t limit = best ? best->length() - 1 : SIZE_MAX;
    if (auto c = shortest_dicycle_through(d, s, limit)) best = std::move(c);
    if (best && best->length() == 2) break;
  }
  return best;
}

std::vector<CycleWitness> greedy_cycle_packing(const Digraph& d, std::size_t t) {
  if (t < 1) throw InputError("greedy_cycle_packing requires t >= 1");
  std::vector<CycleWitness> packing;
  VertexSet used;
  InducedSubdigraph rest = remove_vertices(d, used);
  while (packing.size() < t) {
    auto c = shortest_dicycle(rest.graph);
    if (!c) break;
    for (Vertex& v : c->vertices) v = rest.to_parent[v];
    used.insert(used.end(), c->vertices.begin(), c->vertices.end());
    packing.push_back(std::move(*c));
    rest = remove_vertices(d, used);
  }
  return packing;
}

namespace {

class PackingSearch {
 public:
  PackingSearch(const Digraph& d, BudgetTracker& tracker) : tracker_(tracker) {
    for (const auto& [u, v] : d.arcs()) {
      out_[u] |= 1u << v;
      in_[v] |= 1u << u;
    }
  }

  bool aborted() const { return aborted_; }

  bool pack(std::uint32_t avail, std::size_t need, std::vector<std::uint32_t>& chosen) {
    if (need == 0) return true;
    if (!tracker_.tick()) {
      aborted_ = true;
      return false;
    }
    avail = cyclic_part(avail);
    if (static_cast<std::size_t>(std::popcount(avail)) < 2 * need) return false;
    const int v = std::countr_zero(avail);
    std::vector<std::uint32_t> cycles;
    induced_cycles_through(v, avail, cycles);
    for (std::uint32_t c : cycles) {
      chosen.push_back(c);
      if (pack(avail & ~c, need - 1, chosen)) return true;
      chosen.pop_back();
      if (aborted_) return false;
    }
    return pack(avail & ~(1u << v), need, chosen);
  }

  std::vector<Vertex> order_cycle(std::uint32_t mask) const {
    // Walk the unique successor inside the (induced) cycle.
    std::vector<Vertex> vs;
    const int start = std::countr_zero(mask);
    int cur = start;
    do {
      vs.push_back(static_cast<Vertex>(cur));
      cur = std::countr_zero(out_[cur] & mask);
    } while (cur != start);
    return vs;
  }

 private:
  // Vertices lying on some dicycle within `avail`.
  std::uint32_t cyclic_part(std::uint32_t avail) const {
    std::uint32_t result = 0;
    for (std::uint32_t rest = avail; rest; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      if (result >> v & 1) continue;
      const std::uint32_t fwd = reach(v, avail, out_), bwd = reach(v, avail, in_);
      const std::uint32_t scc = fwd & bwd;
      if (std::popcount(scc) > 1) result |= scc;
    }
    return result;
  }

  static std::uint32_t reach(int v, std::uint32_t avail, const std::uint32_t* adj) {
    std::uint32_t seen = 1u << v, frontier = seen;
    while (frontier) {
      std::uint32_t next = 0;
      for (std::uint32_t f = frontier; f; f &= f - 1) next |= adj[std::countr_zero(f)];
      frontier = next & avail & ~seen;
      seen |= frontier;
    }
    return seen;
  }

  // Chordless dicycles through v: a path p0=v..pk may grow by w only if no
  // earlier path vertex points to w and w points to no path vertex but p0.
  void induced_cycles_through(int v, std::uint32_t avail, std::vector<std::uint32_t>& out) const {
    std::vector<int> path{v};
    std::uint32_t on_path = 1u << v;
    auto dfs = [&](auto& self) -> void {
      const int last = path.back();
      const std::uint32_t before_last = on_path & ~(1u << last);
      const std::uint32_t inner = on_path & ~(1u << v);
      for (std::uint32_t cand = out_[last] & avail & ~on_path; cand; cand &= cand - 1) {
        const int w = std::countr_zero(cand);
        if ((in_[w] & before_last) || (out_[w] & inner)) continue;
        if (out_[w] >> v & 1) {
          out.push_back(on_path | (1u << w));
          continue;
        }
        path.push_back(w);
        on_path |= 1u << w;
        self(self);
        on_path &= ~(1u << w);
        path.pop_back();
      }
    };
    dfs(dfs);
    // Shorter cycles first.
    std::ranges::stable_sort(out, [](std::uint32_t a, std::uint32_t b) { return std::popcount(a) < std::popcount(b); });
  }

  BudgetTracker& tracker_;
  std::uint32_t out_[32] = {};
  std::uint32_t in_[32] = {};
  bool aborted_ = false;
};

}  // namespace

std::optional<std::vector<CycleWitness>> exact_cycle_packing(const Digraph& d, std::size_t t,
                                                             const SolverBudget& budget) {
  if (d.order() > kExactPackingLimit) {
    throw InputError("exact_cycle_packing supports at most " + std::to_string(kExactPackingLimit) + " vertices");
  }
  BudgetTracker tracker(budget);
  PackingSearch search(d, tracker);
  std::vector<std::uint32_t> chosen;
  const std::uint32_t all = d.order() == 0 ? 0 : static_cast<std::uint32_t>((std::uint64_t{1} << d.order()) - 1);
  const bool found = search.pack(all, t, chosen);
  if (search.aborted()) return std::nullopt;
  std::vector<CycleWitness> cycles;
  if (found) {
    for (std::uint32_t c : chosen) cycles.push_back(CycleWitness{search.order_cycle(c), true});
  }
  return cycles;
}

Decomposition decompose(const Digraph& d, std::size_t t, const SolverBudget& budget) {
  if (t < 1) throw InputError("decompose requires t >= 1");
  Decomposition dec;
  dec.t_requested = t;
  auto greedy = greedy_cycle_packing(d, t);
  if (greedy.size() >= t) {
    dec.kind = DecompositionKind::cycles;
    dec.cycles = std::move(greedy);
    return dec;
  }
  if (d.order() <= kExactPackingLimit) {
    auto exact = exact_cycle_packing(d, t, budget);
    if (exact && !exact->empty()) {
      dec.kind = DecompositionKind::cycles;
      dec.cycles = std::move(*exact);
      return dec;
    }
    dec.packing_excluded = exact.has_value();
  }
  auto fvs = min_fvs_exact(d, budget);
  if (!fvs.decided()) return dec;
  dec.kind = DecompositionKind::fvs;
  dec.fvs = std::move(fvs.witness);
  dec.fvs_minimum = true;
  return dec;
}

bool verify_decomposition(const Digraph& d, const Decomposition& dec) {
  switch (dec.kind) {
    case DecompositionKind::cycles: {
      if (dec.cycles.size() < dec.t_requested) return false;
      std::vector<char> used(d.order(), 0);
      for (const auto& c : dec.cycles) {
        if (!c.directed || !is_valid_cycle(d, c)) return false;
        for (Vertex v : c.vertices) {
          if (used[v]) return false;
          used[v] = 1;
        }
      }
      return true;
    }
    case DecompositionKind::fvs: {
      for (Vertex v : dec.fvs) {
        if (!d.contains(v)) return false;
      }
      return is_acyclic(remove_vertices(d, dec.fvs).graph);
    }
    case DecompositionKind::undecided:
      return false;
  }
  return false;
}

ShortCycleOutcome short_cycle_witness(const Digraph& d, const SolverBudget& budget) {
  ShortCycleOutcome result;
  const auto two = k_colorable(d, 2, budget);
  if (two.verdict == Verdict::yes) throw InputError("short_cycle_witness requires chi(D) >= 3");
  if (two.verdict == Verdict::undecided) return result;

  auto packing = greedy_cycle_packing(d, std::max<std::size_t>(d.order(), 1));
  if (packing.size() >= 2) {
    auto shortest = std::ranges::min_element(packing, {}, &CycleWitness::length);
    ShortCycleWitness w;
    w.cycle = *shortest;
    w.branch = WitnessBranch::packing;
    w.packing_size = packing.size();
    w.length_bound = static_cast<double>(d.order()) / static_cast<double>(packing.size());
    result.outcome = Outcome::decided;
    result.witness = std::move(w);
    return result;
  }

  auto fvs = min_fvs_exact(d, budget);
  if (!fvs.decided()) return result;
  // D - S is one acyclic class; chi(D) >= 3 forces a dicycle inside D[S].
  const auto sub = induced_subdigraph(d, fvs.witness);
  auto cycle = shortest_dicycle(sub.graph);
  if (!cycle) throw std::logic_error("minimum FVS of a 3-chromatic digraph induces an acyclic set");
  for (Vertex& v : cycle->vertices) v = sub.to_parent[v];
  ShortCycleWitness w;
  w.cycle = std::move(*cycle);
  w.branch = WitnessBranch::fvs;
  w.packing_size = packing.size();
  w.fvs = std::move(fvs.witness);
  w.length_bound = static_cast<double>(w.fvs.size());
  result.outcome = Outcome::decided;
  result.witness = std::move(w);
  return result;
}

const char* to_string(DecompositionKind k) {
  switch (k) {
    case DecompositionKind::cycles:
      return "cycles";
    case DecompositionKind::fvs:
      return "fvs";
    case DecompositionKind::undecided:
      return "undecided";
  }
  return "?";
}

const char* to_string(WitnessBranch b) {
  return b == WitnessBranch::packing ? "packing" : "fvs";
}

}  // namespace dichroma
