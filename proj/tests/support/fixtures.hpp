#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "dichroma/digraph.hpp"
#include "dichroma/random_model.hpp"
#include "dichroma/rng.hpp"

namespace dichroma::test {

inline Digraph directed_cycle(std::size_t n) {
  std::vector<Arc> arcs;
  for (Vertex v = 0; v < n; ++v) arcs.emplace_back(v, static_cast<Vertex>((v + 1) % n));
  return Digraph(n, std::move(arcs));
}

inline Digraph directed_path(std::size_t n) {
  std::vector<Arc> arcs;
  for (Vertex v = 0; v + 1 < n; ++v) arcs.emplace_back(v, v + 1);
  return Digraph(n, std::move(arcs));
}

/// Both arcs between every pair.
inline Digraph bidirected_complete(std::size_t n) {
  std::vector<Arc> arcs;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = 0; v < n; ++v) {
      if (u != v) arcs.emplace_back(u, v);
    }
  }
  return Digraph(n, std::move(arcs));
}

/// i -> j for all i < j.
inline Digraph transitive_tournament(std::size_t n) {
  std::vector<Arc> arcs;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) arcs.emplace_back(u, v);
  }
  return Digraph(n, std::move(arcs));
}

/// Orientation of K_n; bit i of `mask` reverses the i-th pair (u < v).
inline Digraph oriented_complete(std::size_t n, std::uint64_t mask) {
  std::vector<Arc> arcs;
  std::size_t bit = 0;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v, ++bit) {
      if (mask >> bit & 1) {
        arcs.emplace_back(v, u);
      } else {
        arcs.emplace_back(u, v);
      }
    }
  }
  return Digraph(n, std::move(arcs));
}

/// Disjoint union.
inline Digraph disjoint_union(const Digraph& a, const Digraph& b) {
  std::vector<Arc> arcs = a.arcs();
  const auto shift = static_cast<Vertex>(a.order());
  for (const auto& [u, v] : b.arcs()) arcs.emplace_back(u + shift, v + shift);
  return Digraph(a.order() + b.order(), std::move(arcs));
}

/// Uniformly random subset of 0..n-1 (each vertex kept with probability 1/2).
inline VertexSet random_subset(std::size_t n, Rng& rng) {
  VertexSet s;
  for (Vertex v = 0; v < n; ++v) {
    if (rng.next() >> 63) s.push_back(v);
  }
  return s;
}

inline std::vector<Vertex> random_permutation(std::size_t n, Rng& rng) {
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), Vertex{0});
  for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
  return perm;
}

}  // namespace dichroma::test
