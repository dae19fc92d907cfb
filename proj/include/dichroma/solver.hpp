#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dichroma/digraph.hpp"

namespace dichroma {

/// Search limits. Exceeding either yields an undecided outcome.
struct SolverBudget {
  std::uint64_t node_limit = 100'000'000;
  double time_limit = 600.0;  // seconds
};

void validate(const SolverBudget& budget);

/// Counts search nodes against a SolverBudget. The clock is only consulted
/// every 1024 nodes.
class BudgetTracker {
 public:
  explicit BudgetTracker(const SolverBudget& budget);

  /// Registers one node; false once the budget is exhausted (sticky).
  bool tick();
  bool exhausted() const { return exhausted_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  SolverBudget budget_;
  std::chrono::steady_clock::time_point start_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
};

/// colors[v] in 0..k-1; every class induces an acyclic subdigraph.
struct ColoringAssignment {
  std::vector<std::uint32_t> colors;
  std::size_t k = 0;
};

bool is_valid_coloring(const Digraph& d, const ColoringAssignment& c);

enum class Outcome { decided, undecided };

struct ChromaticResult {
  Outcome outcome = Outcome::undecided;
  /// Certified bracket; lower == upper == chi(D) when decided.
  std::size_t lower = 0;
  std::size_t upper = 0;
  /// A coloring with `upper` classes.
  ColoringAssignment witness;
  std::uint64_t nodes = 0;

  bool decided() const { return outcome == Outcome::decided; }
};

enum class Verdict { yes, no, undecided };

struct ColorabilityResult {
  Verdict verdict = Verdict::undecided;
  std::optional<ColoringAssignment> witness;  // present iff yes
  std::uint64_t nodes = 0;
};

struct FvsResult {
  Outcome outcome = Outcome::undecided;
  std::size_t lower = 0;
  std::size_t upper = 0;
  /// Feedback vertex set of size `upper`.
  VertexSet witness;
  std::uint64_t nodes = 0;

  bool decided() const { return outcome == Outcome::decided; }
};

struct AcyclicSetResult {
  Outcome outcome = Outcome::undecided;
  std::size_t lower = 0;
  std::size_t upper = 0;
  /// Acyclic set of size `lower`.
  VertexSet witness;
  std::uint64_t nodes = 0;

  bool decided() const { return outcome == Outcome::decided; }
};

/// Dichromatic number by iterative deepening over k, per strong component.
ChromaticResult chromatic_number_exact(const Digraph& d, const SolverBudget& budget = {});

/// Decides whether V(D) splits into at most k acyclic sets. Requires k >= 1.
ColorabilityResult k_colorable(const Digraph& d, std::size_t k, const SolverBudget& budget = {});

/// Minimum feedback vertex set by branch and bound on shortest dicycles.
FvsResult min_fvs_exact(const Digraph& d, const SolverBudget& budget = {});

/// Maximum acyclic set, the complement of a minimum feedback vertex set.
AcyclicSetResult max_acyclic_set_exact(const Digraph& d, const SolverBudget& budget = {});

/// Colors vertices in `order`, each with the smallest color whose class stays
/// acyclic. `order` must be a permutation of the vertices.
ColoringAssignment greedy_coloring(const Digraph& d, std::span<const Vertex> order);

/// Vertices sorted by descending total degree, ties by ascending id.
std::vector<Vertex> degree_order(const Digraph& d);

/// ceil(n / alpha_upper): chi(D) >= n / alpha(D). Requires alpha_upper >= 1.
std::size_t pigeonhole_lower_bound(const Digraph& d, std::size_t alpha_upper);
/// Real-valued variant; alpha_upper must be positive (or n zero).
std::size_t pigeonhole_lower_bound(std::size_t n, double alpha_upper);

enum class FastTwoColor { certified_yes, unknown };

/// Sound but incomplete: an empty (2,2)-core rules out 3-critical
/// subdigraphs, hence chi(D) <= 2.
FastTwoColor two_colorable_fast(const Digraph& d);

/// Small greedy feedback vertex set, made inclusion-minimal.
VertexSet greedy_fvs(const Digraph& d);

}  // namespace dichroma
