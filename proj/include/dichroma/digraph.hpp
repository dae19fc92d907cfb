#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "dichroma/error.hpp"

namespace dichroma {

using Vertex = std::uint32_t;
using Arc = std::pair<Vertex, Vertex>;
/// Sorted, duplicate-free list of vertex ids.
using VertexSet = std::vector<Vertex>;

/**
 * Loopless digraph on the dense vertex set 0..n-1 without parallel arcs.
 *
 * Digons (u->v together with v->u) are allowed. Adjacency is stored in CSR
 * form for both directions; neighbor lists are sorted ascending. The object
 * is immutable after construction.
 */
class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(std::size_t n);
  /// Throws InputError on loops, duplicate arcs or out-of-range endpoints.
  Digraph(std::size_t n, std::vector<Arc> arcs);

  std::size_t order() const { return n_; }
  std::size_t arc_count() const { return arcs_.size(); }

  /// Arcs in lexicographic order.
  const std::vector<Arc>& arcs() const { return arcs_; }

  std::span<const Vertex> out(Vertex v) const {
    return {out_targets_.data() + out_offsets_[v], out_offsets_[v + 1] - out_offsets_[v]};
  }
  std::span<const Vertex> in(Vertex v) const {
    return {in_sources_.data() + in_offsets_[v], in_offsets_[v + 1] - in_offsets_[v]};
  }

  std::size_t out_degree(Vertex v) const { return out_offsets_[v + 1] - out_offsets_[v]; }
  std::size_t in_degree(Vertex v) const { return in_offsets_[v + 1] - in_offsets_[v]; }

  bool has_arc(Vertex u, Vertex v) const;
  bool contains(Vertex v) const { return v < n_; }

  friend bool operator==(const Digraph& a, const Digraph& b) {
    return a.n_ == b.n_ && a.arcs_ == b.arcs_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Arc> arcs_;
  std::vector<std::size_t> out_offsets_{0};
  std::vector<Vertex> out_targets_;
  std::vector<std::size_t> in_offsets_{0};
  std::vector<Vertex> in_sources_;
};

struct Degrees {
  std::size_t out = 0;
  std::size_t in = 0;
  std::size_t total = 0;
  friend bool operator==(const Degrees&, const Degrees&) = default;
};

/// A cycle given by its vertex sequence. When `directed` is set, every
/// consecutive pair (and last->first) is an arc; otherwise consecutive
/// vertices are adjacent in the underlying multigraph.
struct CycleWitness {
  std::vector<Vertex> vertices;
  bool directed = false;

  std::size_t length() const { return vertices.size(); }
  friend bool operator==(const CycleWitness&, const CycleWitness&) = default;
};

/// D[S] together with the map from its ids back to the parent's ids.
struct InducedSubdigraph {
  Digraph graph;
  std::vector<Vertex> to_parent;
};

Degrees degrees(const Digraph& d, Vertex v);
std::size_t max_total_degree(const Digraph& d);

/// Strongly connected components, listed in a topological order of the
/// condensation (sources first). Each component is sorted ascending.
std::vector<VertexSet> strongly_connected_components(const Digraph& d);

/// True iff D[S] has no directed cycle. Duplicates in `s` are ignored.
bool is_acyclic_induced(const Digraph& d, std::span<const Vertex> s);
bool is_acyclic(const Digraph& d);

/// Shortest cycle of the underlying multigraph; a digon has length 2.
std::optional<std::size_t> girth(const Digraph& d);

/// Shortest directed cycle.
std::optional<std::size_t> digirth(const Digraph& d);

/// Shortest directed cycle passing through `s`, found by BFS along out-arcs.
/// Cycles longer than `max_length` are not reported.
std::optional<CycleWitness> shortest_dicycle_through(const Digraph& d, Vertex s,
                                                     std::size_t max_length = SIZE_MAX);

inline constexpr std::size_t kDefaultCycleCap = 1'000'000;

struct CycleEnumeration {
  std::vector<CycleWitness> cycles;
  /// Set when more than `cap` cycles exist; `count` then holds cap + 1 and
  /// `cycles` is truncated.
  bool overflow = false;
  std::size_t count = 0;
};

/// All cycles of the underlying multigraph of length < g, each reported once.
/// A cycle is listed starting at its smallest vertex, oriented so that the
/// second vertex is smaller than the last. Requires g >= 3.
CycleEnumeration enumerate_short_cycles(const Digraph& d, std::size_t g,
                                        std::size_t cap = kDefaultCycleCap);

/// Checks a witness against `d` (distinct vertices, adjacency, length rules).
bool is_valid_cycle(const Digraph& d, const CycleWitness& c);

InducedSubdigraph induced_subdigraph(const Digraph& d, std::span<const Vertex> s);
/// D - removed.
InducedSubdigraph remove_vertices(const Digraph& d, std::span<const Vertex> removed);

/// Relabels vertex v as perm[v].
Digraph relabel(const Digraph& d, std::span<const Vertex> perm);

std::size_t count_digons(const Digraph& d);

/// Sorts and deduplicates; throws InputError if any id is >= n.
VertexSet normalize_vertex_set(std::span<const Vertex> s, std::size_t n);

}  // namespace dichroma
