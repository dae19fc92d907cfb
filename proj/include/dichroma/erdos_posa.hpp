#pragma once

#include <optional>
#include <vector>

#include "dichroma/digraph.hpp"
#include "dichroma/solver.hpp"

namespace dichroma {

/// A directed cycle of length digirth(D), or nullopt if D is acyclic. The
/// cycle starts at the smallest vertex lying on a shortest dicycle; among
/// those, it closes through the smallest possible predecessor.
std::optional<CycleWitness> shortest_dicycle(const Digraph& d);

/// Up to t vertex-disjoint directed cycles: take a shortest dicycle, delete
/// its vertices, repeat. No optimality claim.
std::vector<CycleWitness> greedy_cycle_packing(const Digraph& d, std::size_t t);

/// Exact search for t vertex-disjoint dicycles (branch on the smallest vertex
/// of a cyclic component: unused, or covered by one of its chordless cycles).
/// nullopt when the budget runs out; an empty vector proves no t-packing.
std::optional<std::vector<CycleWitness>> exact_cycle_packing(const Digraph& d, std::size_t t,
                                                             const SolverBudget& budget = {});

inline constexpr std::size_t kExactPackingLimit = 20;

enum class DecompositionKind { cycles, fvs, undecided };

struct Decomposition {
  DecompositionKind kind = DecompositionKind::undecided;
  std::size_t t_requested = 0;
  std::vector<CycleWitness> cycles;  // kind == cycles
  VertexSet fvs;                     // kind == fvs
  /// True when the absence of a t-packing was proven (exact search ran).
  bool packing_excluded = false;
  bool fvs_minimum = false;
};

/// Either t vertex-disjoint dicycles or a feedback vertex set. Greedy packing
/// first, exact packing for n <= kExactPackingLimit, then a minimum FVS.
Decomposition decompose(const Digraph& d, std::size_t t, const SolverBudget& budget = {});

/// Independent re-check of a decomposition against D.
bool verify_decomposition(const Digraph& d, const Decomposition& dec);

enum class WitnessBranch { packing, fvs };

struct ShortCycleWitness {
  CycleWitness cycle;
  WitnessBranch branch = WitnessBranch::fvs;
  /// packing branch: number of disjoint cycles found; the cycle has length <= n/t.
  std::size_t packing_size = 0;
  /// fvs branch: the feedback set S; the cycle lies in D[S] and has length <= |S|.
  VertexSet fvs;
  double length_bound = 0.0;
};

struct ShortCycleOutcome {
  Outcome outcome = Outcome::undecided;
  std::optional<ShortCycleWitness> witness;
};

/// For chi(D) >= 3 (checked; InputError otherwise): a dicycle from a packing
/// of at least two disjoint dicycles, else a dicycle inside D[S] for a minimum
/// feedback vertex set S.
ShortCycleOutcome short_cycle_witness(const Digraph& d, const SolverBudget& budget = {});

const char* to_string(DecompositionKind k);
const char* to_string(WitnessBranch b);

}  // namespace dichroma
