#pragma once

#include <cstdint>

#include "dichroma/digraph.hpp"

namespace dichroma {

/// D(n, p): each unordered pair becomes an edge with probability 2p and the
/// edge is then oriented uniformly at random. `p` is the per-direction
/// probability, so 0 <= p <= 1/2.
struct ModelParams {
  std::size_t n = 1;
  double p = 0.0;
  std::uint64_t seed = 0;
};

void validate(const ModelParams& params);

/// Pairs are visited as (0,1), (0,2), ..., (n-2,n-1). Each pair consumes one
/// uniform draw u; the edge exists iff u < 2p, and then one more word whose
/// top bit picks the orientation (0: low->high, 1: high->low).
Digraph sample(const ModelParams& params);

/// Delta / (4 e n). Throws InputError when the result exceeds 1/2.
double p_theorem1(double delta, std::size_t n);

/// k^2 / n. Throws InputError when the result exceeds 1/2.
double p_theorem2(std::size_t k, std::size_t n);

/// General random digraph: every ordered pair (u, v), u != v, is an arc
/// independently with probability q. Digons occur. Used by the oracle and
/// Erdős–Pósa experiments.
Digraph sample_arc_model(std::size_t n, double q, std::uint64_t seed);

}  // namespace dichroma
