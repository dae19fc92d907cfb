#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dichroma/core_peeling.hpp"
#include "dichroma/digraph.hpp"
#include "dichroma/solver.hpp"

namespace dichroma {

/// Sum over vertices of max(0, d_total(v) - delta).
std::size_t excess_degree(const Digraph& d, std::size_t delta);

struct PrunedDigraph {
  InducedSubdigraph result;  // survivors, with ids mapped back to the input
  VertexSet removed;         // ids of the input digraph
};

/// Deletes vertices (never arcs) until every total degree is <= delta:
/// repeatedly the vertex of highest total degree, ties by smallest id.
/// At most ex(D) vertices are removed. Requires delta >= 1.
PrunedDigraph reduce_max_degree(const Digraph& d, std::size_t delta);

struct ShortCycleRemoval {
  PrunedDigraph pruned;
  std::size_t cycles_hit = 0;
  /// Set when enumeration exceeded the cap; `pruned` is then the input.
  bool overflow = false;
};

/// Greedy hitting set for all cycles (underlying multigraph) shorter than g:
/// repeatedly delete the vertex on the most remaining short cycles, ties by id.
ShortCycleRemoval remove_short_cycles(const Digraph& d, std::size_t g,
                                      std::size_t cycle_cap = kDefaultCycleCap);

enum class AlphaProvenance { exact, claim3_bound, trivial };

struct PipelineOptions {
  /// Exact maximum acyclic set is computed when at most this many vertices survive.
  std::size_t exact_alpha_threshold = 40;
  std::size_t cycle_cap = kDefaultCycleCap;
  SolverBudget budget{};
};

/// Record of one sample -> degree pruning -> short-cycle pruning run, checkable
/// from its own contents.
struct ConstructionCertificate {
  std::size_t n = 0;
  std::size_t delta = 0;
  std::size_t g = 0;
  std::uint64_t seed = 0;
  double p = 0.0;

  std::size_t excess_degree = 0;  // ex(D) of the sampled digraph
  VertexSet removed_for_degree;   // ids in the sampled digraph
  VertexSet removed_for_cycles;
  std::size_t short_cycles_found = 0;
  std::size_t surviving_n = 0;
  Digraph surviving;  // D*, vertices relabeled 0..surviving_n-1 in id order

  std::optional<std::size_t> girth;  // girth(D*)
  std::size_t max_degree = 0;        // Delta(D*)
  bool verified_girth_ok = false;
  bool verified_maxdeg_ok = false;

  double alpha_upper_used = 0.0;
  AlphaProvenance alpha_provenance = AlphaProvenance::trivial;
  VertexSet alpha_witness;  // maximum acyclic set of D* when exact
  std::size_t chi_lower = 0;
  bool chi_lower_heuristic = true;

  std::size_t total_removed() const { return removed_for_degree.size() + removed_for_cycles.size(); }
  /// Whether the total removal stayed within n/100 (reported, not required).
  bool within_n_over_100() const { return 100 * total_removed() <= n; }

  /// Empty when every stage completed.
  std::string failure_stage;
  std::string failure_detail;
  bool completed() const { return failure_stage.empty(); }
};

/// Throws InputError when Delta/(4en) > 1/2 or g < 3; stage failures are
/// recorded in the certificate instead.
ConstructionCertificate theorem1_pipeline(std::size_t delta, std::size_t g, std::size_t n,
                                          std::uint64_t seed, const PipelineOptions& options = {});

struct CertificateCheck {
  bool ok = true;
  std::vector<std::string> problems;
};

/// Re-samples D from the stored parameters and recomputes every derived
/// field of the certificate (D* itself, girth, max degree, ex(D), alpha,
/// chi_lower); any difference is a problem.
CertificateCheck validate_certificate(const ConstructionCertificate& cert,
                                      const SolverBudget& budget = {});

/// |arcs(D[T])| >= 2|T|; every 3-critical subdigraph satisfies it.
/// Requires T nonempty.
bool arcs_lower_bound_check(const Digraph& d, std::span<const Vertex> t);

struct AuditOptions {
  std::size_t subset_budget = 10'000;
  /// Connected core subsets are enumerated up to min(eps*n, this) vertices.
  std::size_t exhaustive_threshold = 8;
  std::uint64_t seed = 0;
  SolverBudget budget{};
  std::size_t max_critical_recorded = 64;
};

enum class AuditStatus { certified_empty_core, no_counterexample, counterexample, inconclusive };

struct AuditReport {
  std::size_t n = 0;
  std::size_t k = 0;
  double eps = 0.0;
  std::uint64_t seed = 0;
  /// k^-5: the regime where the a.a.s. statement is proved (recorded only).
  double eps_regime_limit = 0.0;

  AuditStatus status = AuditStatus::no_counterexample;
  VertexSet core_vertices;
  std::size_t core_size() const { return core_vertices.size(); }

  std::size_t size_limit = 0;  // floor(eps * n)
  std::size_t exhaustive_size_limit = 0;
  std::size_t exhaustive_checked = 0;
  std::size_t random_checked = 0;
  std::size_t subsets_checked() const { return exhaustive_checked + random_checked; }
  std::size_t fast_certified = 0;
  std::size_t exact_checked = 0;
  /// Fast path said "2-colorable" but the exact check disagreed. Must be 0.
  std::size_t soundness_violations = 0;
  std::size_t three_chromatic_found = 0;
  std::vector<VertexSet> critical_subsets;  // distinct, capped
  std::size_t arcs_check_failures = 0;
  /// A largest 3-chromatic subset of size <= eps*n found, if any.
  std::optional<VertexSet> counterexample;
  std::vector<VertexSet> inconclusive;
};

/// Searches for S with |S| <= eps*n and chi(D[S]) >= 3. An empty (2,2)-core
/// certifies that none exists. Otherwise every connected subset of the core up
/// to the exhaustive limit is checked, then `subset_budget` random subsets of
/// V(D) with 3..floor(eps*n) vertices. Requires eps > 0 and eps*n >= 3.
AuditReport theorem2_audit(const Digraph& d, std::size_t k, double eps,
                           const AuditOptions& options = {});

/// Shrinks S (chi(D[S]) >= 3) to a 3-critical T: chi(D[T]) = 3 and every
/// T - v is 2-colorable. nullopt if the solver ran out of budget.
std::optional<VertexSet> extract_three_critical(const Digraph& d, std::span<const Vertex> s,
                                                const SolverBudget& budget = {});

const char* to_string(AlphaProvenance p);
const char* to_string(AuditStatus s);

}  // namespace dichroma
