#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "dichroma/constructions.hpp"
#include "dichroma/rng.hpp"

namespace dichroma {

namespace {

constexpr std::size_t kMaxExhaustive = 16;

// Subdigraph on at most 16 vertices as in/out bitmasks.
struct SmallDigraph {
  std::size_t t = 0;
  std::uint16_t out[kMaxExhaustive] = {};
  std::uint16_t in[kMaxExhaustive] = {};

  // Peels vertices with in- or out-degree < 2; returns the (2,2)-core mask.
  std::uint32_t two_two_core() const {
    std::uint32_t alive = (1u << t) - 1;
    bool changed = true;
    while (changed && alive) {
      changed = false;
      for (std::uint32_t rest = alive; rest; rest &= rest - 1) {
        const int v = std::countr_zero(rest);
        if (std::popcount(out[v] & alive) < 2 || std::popcount(in[v] & alive) < 2) {
          alive &= ~(1u << v);
          changed = true;
        }
      }
    }
    return alive;
  }

  // Exact: some split into two acyclic halves exists. acyclic[m] holds iff
  // D[m] has a source whose removal leaves an acyclic set.
  bool two_colorable(std::vector<char>& acyclic) const {
    const std::uint32_t full = (1u << t) - 1;
    acyclic.assign(std::size_t{1} << t, 0);
    acyclic[0] = 1;
    for (std::uint32_t m = 1; m <= full; ++m) {
      for (std::uint32_t rest = m; rest; rest &= rest - 1) {
        const int v = std::countr_zero(rest);
        if ((in[v] & m) == 0 && acyclic[m & ~(1u << v)]) {
          acyclic[m] = 1;
          break;
        }
      }
    }
    for (std::uint32_t m = 0; m <= full; ++m) {
      if (acyclic[m] && acyclic[full & ~m]) return true;
    }
    return false;
  }
};

// Dense adjacency over the core for O(1) arc queries.
class CoreMatrix {
 public:
  CoreMatrix(const Digraph& d, const VertexSet& core) : m_(core.size()), words_((m_ + 63) / 64) {
    bits_.assign(m_ * words_, 0);
    std::vector<Vertex> local(d.order(), UINT32_MAX);
    for (std::size_t i = 0; i < m_; ++i) local[core[i]] = static_cast<Vertex>(i);
    adj_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      for (Vertex w : d.out(core[i])) {
        if (local[w] == UINT32_MAX) continue;
        bits_[i * words_ + local[w] / 64] |= std::uint64_t{1} << (local[w] % 64);
        adj_[i].push_back(local[w]);
      }
      for (Vertex u : d.in(core[i])) {
        if (local[u] != UINT32_MAX) adj_[i].push_back(local[u]);
      }
      std::ranges::sort(adj_[i]);
      adj_[i].erase(std::unique(adj_[i].begin(), adj_[i].end()), adj_[i].end());
    }
  }

  bool arc(Vertex a, Vertex b) const { return (bits_[a * words_ + b / 64] >> (b % 64)) & 1; }
  std::size_t size() const { return m_; }
  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }

  SmallDigraph small(std::span<const Vertex> vs) const {
    SmallDigraph s;
    s.t = vs.size();
    for (std::size_t i = 0; i < vs.size(); ++i) {
      for (std::size_t j = 0; j < vs.size(); ++j) {
        if (i != j && arc(vs[i], vs[j])) {
          s.out[i] |= static_cast<std::uint16_t>(1u << j);
          s.in[j] |= static_cast<std::uint16_t>(1u << i);
        }
      }
    }
    return s;
  }

 private:
  std::size_t m_, words_;
  std::vector<std::uint64_t> bits_;
  std::vector<std::vector<Vertex>> adj_;
};

// Visits every connected vertex subset of size <= limit exactly once (ESU:
// each subset is grown from its smallest vertex through an exclusive
// extension set).
template <class F>
void for_each_connected_subset(const CoreMatrix& g, std::size_t limit, F&& visit) {
  const std::size_t m = g.size();
  std::vector<std::uint32_t> near(m, 0);  // # of subset members in N[u]
  std::vector<Vertex> sub;

  auto mark = [&](Vertex w, int delta) {
    near[w] += delta;
    for (Vertex u : g.neighbors(w)) near[u] += delta;
  };

  auto extend = [&](auto& self, std::vector<Vertex> ext, Vertex root) -> void {
    visit(std::span<const Vertex>(sub));
    if (sub.size() == limit) return;
    while (!ext.empty()) {
      const Vertex w = ext.back();
      ext.pop_back();
      std::vector<Vertex> next = ext;
      for (Vertex u : g.neighbors(w)) {
        if (u > root && near[u] == 0) next.push_back(u);
      }
      sub.push_back(w);
      mark(w, 1);
      self(self, std::move(next), root);
      mark(w, -1);
      sub.pop_back();
    }
  };

  for (Vertex v = 0; v < m; ++v) {
    sub.assign(1, v);
    mark(v, 1);
    std::vector<Vertex> ext;
    for (Vertex u : g.neighbors(v)) {
      if (u > v) ext.push_back(u);
    }
    extend(extend, std::move(ext), v);
    mark(v, -1);
  }
}

class Auditor {
 public:
  Auditor(const Digraph& d, AuditReport& report, const AuditOptions& options)
      : d_(d), report_(report), options_(options) {}

  // A subset with chi >= 3 per the exact solver.
  void record_three_chromatic(VertexSet s) {
    ++report_.three_chromatic_found;
    if (!report_.counterexample || s.size() > report_.counterexample->size()) {
      report_.counterexample = s;
    }
    auto critical = extract_three_critical(d_, s, options_.budget);
    if (!critical) {
      report_.inconclusive.push_back(std::move(s));
      return;
    }
    if (!arcs_lower_bound_check(d_, *critical)) ++report_.arcs_check_failures;
    if (report_.critical_subsets.size() < options_.max_critical_recorded &&
        std::ranges::find(report_.critical_subsets, *critical) == report_.critical_subsets.end()) {
      report_.critical_subsets.push_back(std::move(*critical));
    }
  }

  // Random subset: fast path, then the general exact solver regardless.
  void check_random(const VertexSet& s) {
    ++report_.random_checked;
    const auto sub = induced_subdigraph(d_, s);
    const bool fast = two_colorable_fast(sub.graph) == FastTwoColor::certified_yes;
    if (fast) ++report_.fast_certified;
    ++report_.exact_checked;
    const auto exact = k_colorable(sub.graph, 2, options_.budget);
    if (exact.verdict == Verdict::undecided) {
      report_.inconclusive.push_back(s);
      return;
    }
    const bool colorable = exact.verdict == Verdict::yes;
    if (fast && !colorable) ++report_.soundness_violations;
    if (!colorable) record_three_chromatic(s);
  }

  void check_connected(const CoreMatrix& core, std::span<const Vertex> local) {
    ++report_.exhaustive_checked;
    if (local.size() < 3) return;
    const SmallDigraph small = core.small(local);
    const bool fast = small.two_two_core() == 0;
    if (fast) ++report_.fast_certified;
    ++report_.exact_checked;
    const bool colorable = small.two_colorable(scratch_);
    if (fast && !colorable) ++report_.soundness_violations;
    if (fast) return;
    // Rare: confirm with the general solver before reporting anything.
    VertexSet s;
    for (Vertex v : local) s.push_back(report_.core_vertices[v]);
    std::ranges::sort(s);
    const auto exact = k_colorable(induced_subdigraph(d_, s).graph, 2, options_.budget);
    if (exact.verdict == Verdict::undecided) {
      report_.inconclusive.push_back(std::move(s));
      return;
    }
    if ((exact.verdict == Verdict::yes) != colorable) ++report_.soundness_violations;
    if (exact.verdict == Verdict::no) record_three_chromatic(std::move(s));
  }

 private:
  const Digraph& d_;
  AuditReport& report_;
  const AuditOptions& options_;
  std::vector<char> scratch_;
};

}  // namespace

std::optional<VertexSet> extract_three_critical(const Digraph& d, std::span<const Vertex> s,
                                                const SolverBudget& budget) {
  VertexSet t = normalize_vertex_set(s, d.order());
  const auto whole = k_colorable(induced_subdigraph(d, t).graph, 2, budget);
  if (whole.verdict != Verdict::no) {
    if (whole.verdict == Verdict::undecided) return std::nullopt;
    throw InputError("extract_three_critical: the set is 2-colorable");
  }
  // One pass suffices: if T - v was 2-colorable, so is every subset of it.
  for (std::size_t i = 0; i < t.size();) {
    VertexSet smaller = t;
    smaller.erase(smaller.begin() + static_cast<std::ptrdiff_t>(i));
    const auto r = k_colorable(induced_subdigraph(d, smaller).graph, 2, budget);
    if (r.verdict == Verdict::undecided) return std::nullopt;
    if (r.verdict == Verdict::no) {
      t = std::move(smaller);
    } else {
      ++i;
    }
  }
  return t;
}

AuditReport theorem2_audit(const Digraph& d, std::size_t k, double eps, const AuditOptions& options) {
  const std::size_t n = d.order();
  if (!(eps > 0.0)) throw InputError("theorem2_audit requires eps > 0");
  if (k < 1) throw InputError("theorem2_audit requires k >= 1");
  if (options.exhaustive_threshold > kMaxExhaustive) {
    throw InputError("exhaustive threshold may not exceed " + std::to_string(kMaxExhaustive));
  }
  const double limit = std::floor(eps * static_cast<double>(n));
  if (limit < 3.0) throw InputError("theorem2_audit requires eps * n >= 3");

  AuditReport report;
  report.n = n;
  report.k = k;
  report.eps = eps;
  report.seed = options.seed;
  report.eps_regime_limit = std::pow(static_cast<double>(k), -5.0);
  report.size_limit = static_cast<std::size_t>(limit);
  report.exhaustive_size_limit = std::min(report.size_limit, options.exhaustive_threshold);
  report.core_vertices = two_two_core(d);

  if (report.core_vertices.empty()) {
    report.status = AuditStatus::certified_empty_core;
    return report;
  }

  Auditor auditor(d, report, options);
  const CoreMatrix core(d, report.core_vertices);
  for_each_connected_subset(core, report.exhaustive_size_limit,
                            [&](std::span<const Vertex> local) { auditor.check_connected(core, local); });

  Rng rng(options.seed);
  std::vector<Vertex> pool(n);
  for (std::size_t i = 0; i < options.subset_budget; ++i) {
    const std::size_t size = 3 + rng.below(report.size_limit - 2);
    // Partial Fisher-Yates over a fresh identity permutation.
    std::iota(pool.begin(), pool.end(), Vertex{0});
    for (std::size_t j = 0; j < size; ++j) {
      std::swap(pool[j], pool[j + rng.below(n - j)]);
    }
    VertexSet s(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(size));
    std::ranges::sort(s);
    auditor.check_random(s);
  }

  if (!report.inconclusive.empty()) {
    report.status = AuditStatus::inconclusive;
  } else if (report.counterexample) {
    report.status = AuditStatus::counterexample;
  } else {
    report.status = AuditStatus::no_counterexample;
  }
  return report;
}

}  // namespace dichroma
