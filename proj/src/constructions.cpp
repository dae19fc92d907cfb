#include "dichroma/constructions.hpp"

#include <algorithm>
#include <set>

#include "dichroma/bounds.hpp"
#include "dichroma/random_model.hpp"

namespace dichroma {

std::size_t excess_degree(const Digraph& d, std::size_t delta) {
  std::size_t ex = 0;
  for (Vertex v = 0; v < d.order(); ++v) {
    const std::size_t deg = d.out_degree(v) + d.in_degree(v);
    if (deg > delta) ex += deg - delta;
  }
  return ex;
}

PrunedDigraph reduce_max_degree(const Digraph& d, std::size_t delta) {
  if (delta < 1) throw InputError("reduce_max_degree requires Delta >= 1");
  const std::size_t n = d.order();
  std::vector<std::size_t> deg(n);
  std::vector<char> gone(n, 0);
  // Ordered by (descending degree, ascending id).
  std::set<std::pair<std::size_t, Vertex>, std::greater<>> heavy;
  auto key = [&](Vertex v) { return std::pair{deg[v], static_cast<Vertex>(n - 1 - v)}; };
  for (Vertex v = 0; v < n; ++v) {
    deg[v] = d.out_degree(v) + d.in_degree(v);
    if (deg[v] > delta) heavy.insert(key(v));
  }
  VertexSet removed;
  while (!heavy.empty()) {
    const Vertex v = static_cast<Vertex>(n - 1 - heavy.begin()->second);
    heavy.erase(heavy.begin());
    gone[v] = 1;
    removed.push_back(v);
    auto touch = [&](Vertex w) {
      if (gone[w]) return;
      if (deg[w] > delta) heavy.erase(key(w));
      --deg[w];
      if (deg[w] > delta) heavy.insert(key(w));
    };
    for (Vertex w : d.out(v)) touch(w);
    for (Vertex u : d.in(v)) touch(u);
  }
  std::ranges::sort(removed);
  return {remove_vertices(d, removed), removed};
}

ShortCycleRemoval remove_short_cycles(const Digraph& d, std::size_t g, std::size_t cycle_cap) {
  if (g < 3) throw InputError("remove_short_cycles requires g >= 3");
  ShortCycleRemoval out;
  const auto cycles = enumerate_short_cycles(d, g, cycle_cap);
  if (cycles.overflow) {
    out.overflow = true;
    out.cycles_hit = cycles.count;
    out.pruned = {remove_vertices(d, {}), {}};
    return out;
  }
  const std::size_t n = d.order();
  std::vector<std::vector<std::size_t>> on_cycles(n);
  std::vector<std::size_t> hits(n, 0);
  for (std::size_t i = 0; i < cycles.cycles.size(); ++i) {
    for (Vertex v : cycles.cycles[i].vertices) {
      on_cycles[v].push_back(i);
      ++hits[v];
    }
  }
  std::vector<char> alive(cycles.cycles.size(), 1);
  std::size_t remaining = cycles.cycles.size();
  VertexSet removed;
  while (remaining > 0) {
    Vertex pick = 0;
    for (Vertex v = 1; v < n; ++v) {
      if (hits[v] > hits[pick]) pick = v;
    }
    removed.push_back(pick);
    for (std::size_t c : on_cycles[pick]) {
      if (!alive[c]) continue;
      alive[c] = 0;
      --remaining;
      for (Vertex v : cycles.cycles[c].vertices) --hits[v];
    }
  }
  std::ranges::sort(removed);
  out.cycles_hit = cycles.cycles.size();
  out.pruned = {remove_vertices(d, removed), removed};
  return out;
}

ConstructionCertificate theorem1_pipeline(std::size_t delta, std::size_t g, std::size_t n,
                                          std::uint64_t seed, const PipelineOptions& options) {
  if (g < 3) throw InputError("theorem1_pipeline requires g >= 3");
  ConstructionCertificate cert;
  cert.n = n;
  cert.delta = delta;
  cert.g = g;
  cert.seed = seed;
  cert.p = p_theorem1(static_cast<double>(delta), n);

  const Digraph d = sample({n, cert.p, seed});
  cert.excess_degree = excess_degree(d, delta);

  auto degree_stage = reduce_max_degree(d, delta);
  cert.removed_for_degree = degree_stage.removed;

  auto cycle_stage = remove_short_cycles(degree_stage.result.graph, g, options.cycle_cap);
  if (cycle_stage.overflow) {
    cert.failure_stage = "short_cycles";
    cert.failure_detail = "more than " + std::to_string(options.cycle_cap) +
                          " cycles shorter than g; parameters too dense";
    return cert;
  }
  cert.short_cycles_found = cycle_stage.cycles_hit;
  for (Vertex v : cycle_stage.pruned.removed) {
    cert.removed_for_cycles.push_back(degree_stage.result.to_parent[v]);
  }
  std::ranges::sort(cert.removed_for_cycles);

  VertexSet all_removed = cert.removed_for_degree;
  all_removed.insert(all_removed.end(), cert.removed_for_cycles.begin(), cert.removed_for_cycles.end());
  cert.surviving = remove_vertices(d, all_removed).graph;
  cert.surviving_n = cert.surviving.order();

  // Recomputed from D* rather than trusted from the stages.
  cert.girth = girth(cert.surviving);
  cert.max_degree = max_total_degree(cert.surviving);
  cert.verified_girth_ok = !cert.girth || *cert.girth >= g;
  cert.verified_maxdeg_ok = cert.max_degree <= delta;
  if (!cert.verified_girth_ok || !cert.verified_maxdeg_ok) {
    cert.failure_stage = "verification";
    cert.failure_detail = "pruned digraph violates the girth or degree target";
    return cert;
  }

  cert.alpha_provenance = AlphaProvenance::trivial;
  cert.alpha_upper_used = static_cast<double>(cert.surviving_n);
  if (cert.surviving_n <= options.exact_alpha_threshold) {
    auto alpha = max_acyclic_set_exact(cert.surviving, options.budget);
    if (alpha.decided()) {
      cert.alpha_provenance = AlphaProvenance::exact;
      cert.alpha_upper_used = static_cast<double>(alpha.upper);
      cert.alpha_witness = alpha.witness;
    }
  }
  if (cert.alpha_provenance != AlphaProvenance::exact && delta >= 2) {
    cert.alpha_provenance = AlphaProvenance::claim3_bound;
    cert.alpha_upper_used = claim3_mas_bound(static_cast<double>(n), static_cast<double>(delta));
  }
  cert.chi_lower = cert.surviving_n == 0 || cert.alpha_upper_used <= 0.0
                       ? 0
                       : pigeonhole_lower_bound(cert.surviving_n, cert.alpha_upper_used);
  cert.chi_lower_heuristic = cert.alpha_provenance != AlphaProvenance::exact;
  return cert;
}

bool arcs_lower_bound_check(const Digraph& d, std::span<const Vertex> t) {
  if (t.empty()) throw InputError("arcs_lower_bound_check requires a nonempty set");
  const auto sub = induced_subdigraph(d, t);
  return sub.graph.arc_count() >= 2 * sub.graph.order();
}

const char* to_string(AlphaProvenance p) {
  switch (p) {
    case AlphaProvenance::exact:
      return "exact";
    case AlphaProvenance::claim3_bound:
      return "claim3_bound";
    case AlphaProvenance::trivial:
      return "trivial";
  }
  return "?";
}

const char* to_string(AuditStatus s) {
  switch (s) {
    case AuditStatus::certified_empty_core:
      return "certified_empty_core";
    case AuditStatus::no_counterexample:
      return "no_counterexample";
    case AuditStatus::counterexample:
      return "counterexample";
    case AuditStatus::inconclusive:
      return "inconclusive";
  }
  return "?";
}

}  // namespace dichroma
