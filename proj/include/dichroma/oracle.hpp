#pragma once

#include <cstddef>
#include <cstdint>

#include "dichroma/digraph.hpp"

// Brute-force reference values for cross-checking the exact solvers. These
// routines read only the arc list and share no code with the solver module.
namespace dichroma::oracle {

inline constexpr std::size_t kMaxOracleOrder = 12;

/// Minimum number of blocks over all set partitions of V(D) (restricted
/// growth strings) whose blocks all induce acyclic subdigraphs.
std::size_t chromatic_number(const Digraph& d);

/// Largest vertex subset, over all 2^n subsets, inducing an acyclic subdigraph.
std::size_t max_acyclic_set(const Digraph& d);

/// acyclic[m] for every vertex mask m of D.
std::vector<bool> acyclic_masks(const Digraph& d);

}  // namespace dichroma::oracle
