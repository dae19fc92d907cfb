#include "dichroma/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dichroma/core_peeling.hpp"

namespace dichroma {

namespace {

constexpr std::uint32_t kUncolored = UINT32_MAX;

// Color classes over a fixed digraph with an incremental "would v close a
// directed cycle inside class c" test (DFS restricted to class c).
class ClassTracker {
 public:
  explicit ClassTracker(const Digraph& d)
      : d_(d), color_(d.order(), kUncolored), seen_(d.order(), 0) {}

  bool closes_cycle(Vertex v, std::uint32_t c) {
    if (++epoch_ == 0) {
      std::ranges::fill(seen_, 0);
      epoch_ = 1;
    }
    stack_.clear();
    for (Vertex w : d_.out(v)) {
      if (color_[w] == c && seen_[w] != epoch_) {
        seen_[w] = epoch_;
        stack_.push_back(w);
      }
    }
    while (!stack_.empty()) {
      Vertex x = stack_.back();
      stack_.pop_back();
      for (Vertex w : d_.out(x)) {
        if (w == v) return true;
        if (color_[w] == c && seen_[w] != epoch_) {
          seen_[w] = epoch_;
          stack_.push_back(w);
        }
      }
    }
    return false;
  }

  void assign(Vertex v, std::uint32_t c) { color_[v] = c; }
  void clear(Vertex v) { color_[v] = kUncolored; }
  const std::vector<std::uint32_t>& colors() const { return color_; }

 private:
  const Digraph& d_;
  std::vector<std::uint32_t> color_;
  std::vector<std::uint32_t> seen_;
  std::uint32_t epoch_ = 0;
  std::vector<Vertex> stack_;
};

std::size_t distinct_colors(const std::vector<std::uint32_t>& colors) {
  std::vector<std::uint32_t> c = colors;
  std::ranges::sort(c);
  return static_cast<std::size_t>(std::unique(c.begin(), c.end()) - c.begin());
}

// Backtracking over vertices in a fixed order. Vertex i may open at most
// color (max used so far) + 1.
class ColoringSearch {
 public:
  ColoringSearch(const Digraph& d, std::size_t k, BudgetTracker& tracker)
      : d_(d), k_(k), tracker_(tracker), classes_(d), order_(degree_order(d)) {}

  Verdict run() {
    if (d_.order() == 0) return Verdict::yes;
    return extend(0, 0);
  }

  const std::vector<std::uint32_t>& colors() const { return classes_.colors(); }

 private:
  Verdict extend(std::size_t i, std::size_t used) {
    if (i == order_.size()) return Verdict::yes;
    if (!tracker_.tick()) return Verdict::undecided;
    const Vertex v = order_[i];
    const std::size_t limit = std::min(k_, used + 1);
    for (std::uint32_t c = 0; c < limit; ++c) {
      if (classes_.closes_cycle(v, c)) continue;
      classes_.assign(v, c);
      Verdict r = extend(i + 1, std::max<std::size_t>(used, c + 1));
      if (r != Verdict::no) return r;
      classes_.clear(v);
    }
    return Verdict::no;
  }

  const Digraph& d_;
  std::size_t k_;
  BudgetTracker& tracker_;
  ClassTracker classes_;
  std::vector<Vertex> order_;
};

ColoringAssignment make_assignment(std::vector<std::uint32_t> colors) {
  ColoringAssignment a;
  a.k = distinct_colors(colors);
  a.colors = std::move(colors);
  return a;
}

struct Component {
  InducedSubdigraph sub;
  ColoringAssignment greedy;
};

std::vector<Component> nontrivial_components(const Digraph& d) {
  std::vector<Component> comps;
  for (const auto& scc : strongly_connected_components(d)) {
    if (scc.size() < 2) continue;
    Component c{induced_subdigraph(d, scc), {}};
    c.greedy = greedy_coloring(c.sub.graph, degree_order(c.sub.graph));
    comps.push_back(std::move(c));
  }
  // Hardest first: larger components tend to need more colors.
  std::ranges::stable_sort(comps, [](const Component& a, const Component& b) {
    return a.sub.graph.order() > b.sub.graph.order();
  });
  return comps;
}

}  // namespace

void validate(const SolverBudget& budget) {
  if (budget.node_limit == 0 || !(budget.time_limit > 0.0)) {
    throw InputError("solver budget limits must be positive");
  }
}

BudgetTracker::BudgetTracker(const SolverBudget& budget)
    : budget_(budget), start_(std::chrono::steady_clock::now()) {
  validate(budget);
}

bool BudgetTracker::tick() {
  if (exhausted_) return false;
  ++nodes_;
  if (nodes_ > budget_.node_limit) {
    exhausted_ = true;
  } else if ((nodes_ & 1023) == 0) {
    std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_;
    exhausted_ = elapsed.count() > budget_.time_limit;
  }
  return !exhausted_;
}

bool is_valid_coloring(const Digraph& d, const ColoringAssignment& c) {
  if (c.colors.size() != d.order()) return false;
  if (distinct_colors(c.colors) != c.k) return false;
  std::vector<std::vector<Vertex>> classes;
  for (Vertex v = 0; v < d.order(); ++v) {
    if (c.colors[v] >= c.k) return false;
    if (classes.size() <= c.colors[v]) classes.resize(c.colors[v] + 1);
    classes[c.colors[v]].push_back(v);
  }
  return std::ranges::all_of(classes, [&](const auto& cls) { return is_acyclic_induced(d, cls); });
}

std::vector<Vertex> degree_order(const Digraph& d) {
  std::vector<Vertex> order(d.order());
  for (Vertex v = 0; v < d.order(); ++v) order[v] = v;
  std::ranges::stable_sort(order, [&](Vertex a, Vertex b) {
    return d.out_degree(a) + d.in_degree(a) > d.out_degree(b) + d.in_degree(b);
  });
  return order;
}

ColoringAssignment greedy_coloring(const Digraph& d, std::span<const Vertex> order) {
  if (order.size() != d.order()) throw InputError("greedy_coloring: order is not a permutation");
  std::vector<char> seen(d.order(), 0);
  for (Vertex v : order) {
    if (v >= d.order() || seen[v]) throw InputError("greedy_coloring: order is not a permutation");
    seen[v] = 1;
  }
  ClassTracker classes(d);
  std::uint32_t used = 0;
  for (Vertex v : order) {
    std::uint32_t c = 0;
    while (c < used && classes.closes_cycle(v, c)) ++c;
    classes.assign(v, c);
    used = std::max(used, c + 1);
  }
  return make_assignment(classes.colors());
}

ColorabilityResult k_colorable(const Digraph& d, std::size_t k, const SolverBudget& budget) {
  if (k < 1) throw InputError("k_colorable requires k >= 1");
  BudgetTracker tracker(budget);
  ColorabilityResult result;
  std::vector<std::uint32_t> colors(d.order(), 0);
  bool undecided = false;
  for (auto& comp : nontrivial_components(d)) {
    std::vector<std::uint32_t> local;
    if (comp.greedy.k <= k) {
      local = comp.greedy.colors;
    } else {
      ColoringSearch search(comp.sub.graph, k, tracker);
      Verdict v = search.run();
      if (v == Verdict::no) {
        result.verdict = Verdict::no;
        result.nodes = tracker.nodes();
        return result;
      }
      if (v == Verdict::undecided) {
        // Another component may still certify "no".
        undecided = true;
        continue;
      }
      local = search.colors();
    }
    for (std::size_t i = 0; i < local.size(); ++i) colors[comp.sub.to_parent[i]] = local[i];
  }
  result.nodes = tracker.nodes();
  if (undecided) {
    result.verdict = Verdict::undecided;
    return result;
  }
  result.verdict = Verdict::yes;
  result.witness = make_assignment(std::move(colors));
  return result;
}

ChromaticResult chromatic_number_exact(const Digraph& d, const SolverBudget& budget) {
  BudgetTracker tracker(budget);
  ChromaticResult result;
  const std::size_t n = d.order();
  if (n == 0) {
    result.outcome = Outcome::decided;
    return result;
  }
  std::vector<std::uint32_t> colors(n, 0);
  // `lower` is certified; `upper` is the size of the coloring assembled so far.
  // Only a component that needs more colors than `upper` requires search, and
  // such a search ends with a "no" at used - 1, so the maximum is certified.
  std::size_t lower = 1, upper = 1;
  bool undecided = false;
  for (auto& comp : nontrivial_components(d)) {
    std::size_t certified = 2;
    std::vector<std::uint32_t> local = comp.greedy.colors;
    std::size_t used = comp.greedy.k;
    for (std::size_t k = std::max<std::size_t>(2, upper); k < used && !undecided; ++k) {
      ColoringSearch search(comp.sub.graph, k, tracker);
      Verdict v = search.run();
      if (v == Verdict::undecided) {
        undecided = true;
      } else if (v == Verdict::yes) {
        local = search.colors();
        used = distinct_colors(local);
        break;
      } else {
        certified = k + 1;
      }
    }
    lower = std::max(lower, certified);
    upper = std::max(upper, used);
    for (std::size_t i = 0; i < local.size(); ++i) colors[comp.sub.to_parent[i]] = local[i];
  }
  result.witness = make_assignment(std::move(colors));
  result.upper = result.witness.k;
  result.nodes = tracker.nodes();
  if (undecided) {
    result.lower = std::min(lower, result.upper);
    result.outcome = Outcome::undecided;
  } else {
    result.lower = result.upper;
    result.outcome = Outcome::decided;
  }
  return result;
}

std::size_t pigeonhole_lower_bound(const Digraph& d, std::size_t alpha_upper) {
  if (alpha_upper < 1) throw InputError("pigeonhole_lower_bound requires alpha_upper >= 1");
  return (d.order() + alpha_upper - 1) / alpha_upper;
}

std::size_t pigeonhole_lower_bound(std::size_t n, double alpha_upper) {
  if (n == 0) return 0;
  if (!(alpha_upper > 0.0)) throw InputError("pigeonhole_lower_bound requires alpha_upper > 0");
  return static_cast<std::size_t>(std::ceil(static_cast<double>(n) / alpha_upper));
}

FastTwoColor two_colorable_fast(const Digraph& d) {
  return two_two_core(d).empty() ? FastTwoColor::certified_yes : FastTwoColor::unknown;
}

}  // namespace dichroma
