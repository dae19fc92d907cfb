#include <algorithm>
#include <bit>

#include "doctest.h"
#include "dichroma/bounds.hpp"
#include "dichroma/constructions.hpp"
#include "dichroma/random_model.hpp"
#include "dichroma/serialize.hpp"
#include "fixtures.hpp"

using namespace dichroma;
using namespace dichroma::test;

namespace {

Digraph out_star(std::size_t leaves) {
  std::vector<Arc> arcs;
  for (Vertex v = 1; v <= leaves; ++v) arcs.emplace_back(0, v);
  return Digraph(leaves + 1, std::move(arcs));
}

// Connected subsets (underlying adjacency) of `s` with 1..limit vertices, by
// testing every subset mask.
std::size_t brute_force_connected_subsets(const Digraph& d, const VertexSet& s, std::size_t limit) {
  const std::size_t m = s.size();
  REQUIRE(m <= 20);
  auto adjacent = [&](std::size_t i, std::size_t j) { return d.has_arc(s[i], s[j]) || d.has_arc(s[j], s[i]); };
  std::size_t count = 0;
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) > limit) continue;
    std::uint32_t reached = mask & -mask, frontier = reached;
    while (frontier) {
      const auto i = static_cast<std::size_t>(std::countr_zero(frontier));
      frontier &= frontier - 1;
      for (std::size_t j = 0; j < m; ++j) {
        if ((mask >> j & 1) && !(reached >> j & 1) && adjacent(i, j)) {
          reached |= 1u << j;
          frontier |= 1u << j;
        }
      }
    }
    count += reached == mask;
  }
  return count;
}

bool is_subset(const VertexSet& a, const VertexSet& b) { return std::ranges::includes(b, a); }

// The (2,2)-core by definition: the union of all sets in which every vertex
// keeps in- and out-degree at least 2 is itself such a set, so it is the
// largest one.
VertexSet brute_force_core(const Digraph& d) {
  const std::size_t n = d.order();
  std::uint32_t best = 0;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    bool ok = true;
    for (Vertex v = 0; v < n && ok; ++v) {
      if (!(mask >> v & 1)) continue;
      std::size_t in = 0, out = 0;
      for (Vertex w : d.out(v)) out += mask >> w & 1;
      for (Vertex w : d.in(v)) in += mask >> w & 1;
      ok = in >= 2 && out >= 2;
    }
    if (ok) best |= mask;
  }
  VertexSet s;
  for (Vertex v = 0; v < n; ++v) {
    if (best >> v & 1) s.push_back(v);
  }
  return s;
}

}  // namespace

TEST_SUITE("constructions") {
  TEST_CASE("excess degree examples") {
    CHECK(excess_degree(directed_cycle(6), 2) == 0);
    CHECK(excess_degree(out_star(7), 4) == 3);
    // Vertex 0 has total degree 4 and vertex 1 has 3, both above 2.
    const Digraph d(5, {{0, 1}, {0, 2}, {0, 3}, {4, 0}, {1, 2}, {3, 1}});
    CHECK(excess_degree(d, 2) == 2 + 1);
    CHECK(excess_degree(d, 0) == 12);
  }

  TEST_CASE("reduce_max_degree examples") {
    const Digraph c = directed_cycle(5);
    const auto same = reduce_max_degree(c, 2);
    CHECK(same.removed.empty());
    CHECK(same.result.graph == c);

    const auto star = reduce_max_degree(out_star(6), 4);
    CHECK(star.removed == VertexSet{0});
    CHECK(star.result.graph.arc_count() == 0);
    CHECK(excess_degree(out_star(6), 4) == 2);
    CHECK_THROWS_AS(reduce_max_degree(c, 0), InputError);
  }

  TEST_CASE("reduce_max_degree on 100 seeds of the sparse model") {
    const double p = p_theorem1(8, 200);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const Digraph d = sample({200, p, seed});
      const auto r = reduce_max_degree(d, 8);
      CHECK(max_total_degree(r.result.graph) <= 8);
      CHECK(r.removed.size() <= excess_degree(d, 8));
      CHECK(r.result.graph == remove_vertices(d, r.removed).graph);
    }
  }

  TEST_CASE("remove_short_cycles examples") {
    const Digraph c5 = directed_cycle(5);
    const auto none = remove_short_cycles(c5, 4);
    CHECK(none.pruned.removed.empty());
    CHECK(none.pruned.result.graph == c5);
    CHECK_FALSE(none.overflow);

    const auto tri = remove_short_cycles(directed_cycle(3), 4);
    CHECK(tri.pruned.removed.size() == 1);
    CHECK(tri.cycles_hit == 1);
    CHECK_THROWS_AS(remove_short_cycles(c5, 2), InputError);
  }

  TEST_CASE("greedy hitting set on every orientation of K4 matches the brute-force minimum") {
    for (std::uint64_t mask = 0; mask < 64; ++mask) {
      const Digraph d = oriented_complete(4, mask);
      const auto r = remove_short_cycles(d, 4);
      std::size_t minimum = 4;
      for (std::uint32_t s = 0; s < 16; ++s) {
        VertexSet removed;
        for (Vertex v = 0; v < 4; ++v) {
          if (s >> v & 1) removed.push_back(v);
        }
        const auto g = girth(remove_vertices(d, removed).graph);
        if (!g || *g >= 4) minimum = std::min<std::size_t>(minimum, removed.size());
      }
      CHECK(minimum == 2);
      CHECK(r.pruned.removed.size() <= 2);
      const auto g = girth(r.pruned.result.graph);
      CHECK((!g || *g >= 4));
    }
  }

  TEST_CASE("short-cycle removal leaves girth at least g on random inputs") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      const Digraph d = sample({80, 0.03, seed});
      for (std::size_t g : {3, 4, 5, 6}) {
        const auto r = remove_short_cycles(d, g);
        REQUIRE_FALSE(r.overflow);
        const auto gi = girth(r.pruned.result.graph);
        CHECK((!gi || *gi >= g));
        if (g == 3) CHECK(r.pruned.removed.empty());
      }
    }
  }

  TEST_CASE("enumeration overflow is reported, not hidden") {
    const auto r = remove_short_cycles(bidirected_complete(8), 6, 10);
    CHECK(r.overflow);
    CHECK(r.pruned.removed.empty());
  }

  TEST_CASE("pipeline at the reference parameters") {
    const auto cert = theorem1_pipeline(16, 5, 3000, 7);
    REQUIRE(cert.completed());
    CHECK(cert.verified_girth_ok);
    CHECK(cert.verified_maxdeg_ok);
    CHECK(cert.p == p_theorem1(16, 3000));
    CHECK(cert.surviving_n + cert.total_removed() == 3000);
    CHECK(cert.removed_for_degree.size() <= cert.excess_degree);
    CHECK(cert.within_n_over_100() == (100 * cert.total_removed() <= 3000));
    CHECK(cert.alpha_provenance == AlphaProvenance::claim3_bound);
    CHECK(cert.alpha_upper_used == claim3_mas_bound(3000, 16));
    CHECK(cert.chi_lower_heuristic);
    CHECK(cert.chi_lower == 1);
    const auto check = validate_certificate(cert);
    CHECK(check.ok);
    CHECK(check.problems.empty());
  }

  TEST_CASE("with g = 3 the short-cycle stage is a no-op") {
    const auto cert = theorem1_pipeline(4, 3, 50, 1);
    REQUIRE(cert.completed());
    CHECK(cert.removed_for_cycles.empty());
    CHECK(cert.short_cycles_found == 0);
    CHECK(validate_certificate(cert).ok);
  }

  TEST_CASE("invalid pipeline parameters") {
    CHECK_THROWS_AS(theorem1_pipeline(40, 5, 5, 1), InputError);
    CHECK_THROWS_AS(theorem1_pipeline(4, 2, 50, 1), InputError);
  }

  TEST_CASE("small pipelines use the exact maximum acyclic set") {
    PipelineOptions options;
    options.exact_alpha_threshold = 200;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto cert = theorem1_pipeline(6, 4, 60, seed, options);
      REQUIRE(cert.completed());
      CHECK(cert.alpha_provenance == AlphaProvenance::exact);
      CHECK_FALSE(cert.chi_lower_heuristic);
      CHECK(cert.alpha_witness.size() == cert.alpha_upper_used);
      CHECK(is_acyclic_induced(cert.surviving, cert.alpha_witness));
      CHECK(cert.chi_lower == pigeonhole_lower_bound(cert.surviving, cert.alpha_witness.size()));
      CHECK(validate_certificate(cert).ok);
    }
  }

  TEST_CASE("the validator catches tampering") {
    PipelineOptions options;
    options.exact_alpha_threshold = 200;
    const auto good = theorem1_pipeline(6, 4, 60, 3, options);
    REQUIRE(validate_certificate(good).ok);
    const auto bad = [](ConstructionCertificate c) { return !validate_certificate(c).ok; };

    auto c = good;
    c.chi_lower += 1;
    CHECK(bad(c));
    c = good;
    c.max_degree += 1;
    CHECK(bad(c));
    c = good;
    c.girth = 3;
    CHECK(bad(c));
    c = good;
    c.seed += 1;
    CHECK(bad(c));
    c = good;
    c.excess_degree += 1;
    CHECK(bad(c));
    c = good;
    c.alpha_upper_used += 1;
    CHECK(bad(c));
    c = good;
    c.chi_lower_heuristic = true;
    CHECK(bad(c));
    c = good;
    c.removed_for_cycles.push_back(static_cast<Vertex>(c.n + 5));
    CHECK(bad(c));
    c = good;
    std::vector<Arc> arcs = c.surviving.arcs();
    arcs.pop_back();
    c.surviving = Digraph(c.surviving.order(), std::move(arcs));
    CHECK(bad(c));
    c = good;
    c.failure_stage = "sample";
    CHECK(bad(c));
  }

  TEST_CASE("certificates survive a JSON round trip") {
    const auto cert = theorem1_pipeline(16, 5, 3000, 11);
    const Json j = to_json(cert);
    const auto back = certificate_from_json(Json::parse(j.dump()));
    CHECK(back.surviving == cert.surviving);
    CHECK(back.removed_for_degree == cert.removed_for_degree);
    CHECK(back.removed_for_cycles == cert.removed_for_cycles);
    CHECK(back.girth == cert.girth);
    CHECK(back.alpha_upper_used == cert.alpha_upper_used);
    CHECK(back.alpha_provenance == cert.alpha_provenance);
    CHECK(back.p == cert.p);
    CHECK(validate_certificate(back).ok);
    CHECK(to_json(back) == j);
    Json broken = j;
    broken.erase("surviving");
    CHECK_THROWS_AS(certificate_from_json(broken), InputError);
  }

  TEST_CASE("two_two_core examples") {
    CHECK(two_two_core(directed_cycle(6)).empty());
    CHECK(two_two_core(bidirected_complete(4)) == VertexSet{0, 1, 2, 3});
    const Digraph cliques = disjoint_union(bidirected_complete(4), bidirected_complete(4));
    std::vector<Arc> arcs = cliques.arcs();
    for (Vertex v = 8; v < 12; ++v) arcs.emplace_back(v - 1, v);
    const Digraph d(12, std::move(arcs));
    CHECK(two_two_core(d) == VertexSet{0, 1, 2, 3, 4, 5, 6, 7});
  }

  TEST_CASE("core matches its definition and ignores the peeling order") {
    Rng rng(8);
    for (int i = 0; i < 300; ++i) {
      const Digraph d = sample_arc_model(11, 0.15 + 0.3 * rng.uniform(), rng.next());
      const VertexSet core = two_two_core(d, PeelOrder::ascending);
      CHECK(core == two_two_core(d, PeelOrder::descending));
      CHECK(core == brute_force_core(d));
    }
  }

  TEST_CASE("core is monotone under induced subdigraphs") {
    Rng rng(21);
    for (int i = 0; i < 50; ++i) {
      const Digraph d = sample_arc_model(40, 0.08, rng.next());
      const VertexSet core = two_two_core(d);
      for (int j = 0; j < 10; ++j) {
        const auto sub = induced_subdigraph(d, random_subset(40, rng));
        VertexSet mapped;
        for (Vertex v : two_two_core(sub.graph)) mapped.push_back(sub.to_parent[v]);
        std::ranges::sort(mapped);
        CHECK(is_subset(mapped, core));
      }
    }
  }

  TEST_CASE("audit examples") {
    const auto dag = theorem2_audit(transitive_tournament(30), 3, 0.2);
    CHECK(dag.status == AuditStatus::certified_empty_core);
    CHECK(dag.core_vertices.empty());
    CHECK_FALSE(dag.counterexample.has_value());

    const auto k4 = theorem2_audit(bidirected_complete(4), 3, 1.0);
    CHECK(k4.status == AuditStatus::counterexample);
    REQUIRE(k4.counterexample.has_value());
    CHECK(*k4.counterexample == VertexSet{0, 1, 2, 3});
    CHECK(k4.soundness_violations == 0);
    CHECK(k4.arcs_check_failures == 0);
    CHECK(k4.eps_regime_limit == doctest::Approx(1.0 / 243));

    CHECK_THROWS_AS(theorem2_audit(bidirected_complete(4), 3, 0.5), InputError);
    CHECK_THROWS_AS(theorem2_audit(bidirected_complete(4), 3, 0.0), InputError);
  }

  TEST_CASE("counterexamples are 3-chromatic and small enough") {
    Rng rng(4);
    for (int i = 0; i < 30; ++i) {
      const Digraph d = sample_arc_model(30, 0.15, rng.next());
      AuditOptions options;
      options.subset_budget = 200;
      options.seed = rng.next();
      const auto r = theorem2_audit(d, 3, 0.2, options);
      CHECK(r.soundness_violations == 0);
      CHECK(r.arcs_check_failures == 0);
      if (r.counterexample) {
        CHECK(r.counterexample->size() <= r.size_limit);
        CHECK(k_colorable(induced_subdigraph(d, *r.counterexample).graph, 2).verdict == Verdict::no);
      }
      for (const VertexSet& t : r.critical_subsets) {
        CHECK(arcs_lower_bound_check(d, t));
        CHECK(is_subset(t, r.core_vertices));
      }
    }
  }

  TEST_CASE("connected subsets of the core are each visited once") {
    Rng rng(13);
    std::size_t nonempty = 0;
    for (int i = 0; i < 40; ++i) {
      const Digraph d = sample_arc_model(16, 0.2 + 0.2 * rng.uniform(), rng.next());
      AuditOptions options;
      options.subset_budget = 0;
      options.exhaustive_threshold = 5;
      const auto r = theorem2_audit(d, 3, 0.5, options);
      if (r.core_vertices.empty()) continue;
      ++nonempty;
      CHECK(r.exhaustive_size_limit == 5);
      CHECK(r.exhaustive_checked == brute_force_connected_subsets(d, r.core_vertices, 5));
    }
    CHECK(nonempty > 10);
  }

  TEST_CASE("an empty core certificate holds up under random re-checks") {
    Rng rng(99);
    std::size_t certified = 0;
    for (std::uint64_t seed = 0; seed < 200 && certified < 3; ++seed) {
      const Digraph d = sample({300, p_theorem2(3, 300) / 4, seed});
      const auto r = theorem2_audit(d, 3, 0.05);
      if (r.status != AuditStatus::certified_empty_core) continue;
      ++certified;
      for (int i = 0; i < 1000; ++i) {
        const auto sub = induced_subdigraph(d, random_subset(300, rng));
        CHECK(k_colorable(sub.graph, 2).verdict == Verdict::yes);
      }
    }
    CHECK(certified == 3);
  }

  TEST_CASE("audit on the reference random instance") {
    const Digraph d = sample({500, p_theorem2(3, 500), 1});
    AuditOptions options;
    options.subset_budget = 10'000;
    options.seed = 5;
    const auto r = theorem2_audit(d, 3, 0.01, options);
    CHECK(r.size_limit == 5);
    CHECK(r.status != AuditStatus::inconclusive);
    CHECK_FALSE(r.counterexample.has_value());
    CHECK(r.random_checked == 10'000);
    CHECK(r.soundness_violations == 0);
  }

  TEST_CASE("arcs lower bound examples") {
    CHECK(arcs_lower_bound_check(bidirected_complete(4), VertexSet{0, 1, 2, 3}));
    CHECK_FALSE(arcs_lower_bound_check(directed_cycle(3), VertexSet{0, 1, 2}));
    CHECK_THROWS_AS(arcs_lower_bound_check(directed_cycle(3), VertexSet{}), InputError);
  }

  TEST_CASE("extract_three_critical shrinks to a critical set") {
    const Digraph d = disjoint_union(bidirected_complete(3), directed_cycle(4));
    const auto t = extract_three_critical(d, VertexSet{0, 1, 2, 3, 4, 5, 6});
    REQUIRE(t.has_value());
    CHECK(*t == VertexSet{0, 1, 2});
    CHECK_THROWS_AS(extract_three_critical(d, VertexSet{3, 4, 5, 6}), InputError);

    Rng rng(31);
    for (int i = 0; i < 40; ++i) {
      const Digraph r = sample_arc_model(9, 0.5, rng.next());
      VertexSet all(9);
      std::iota(all.begin(), all.end(), Vertex{0});
      if (k_colorable(r, 2).verdict != Verdict::no) continue;
      const auto crit = extract_three_critical(r, all);
      REQUIRE(crit.has_value());
      CHECK(k_colorable(induced_subdigraph(r, *crit).graph, 2).verdict == Verdict::no);
      CHECK(arcs_lower_bound_check(r, *crit));
      for (std::size_t j = 0; j < crit->size(); ++j) {
        VertexSet smaller = *crit;
        smaller.erase(smaller.begin() + static_cast<std::ptrdiff_t>(j));
        CHECK(k_colorable(induced_subdigraph(r, smaller).graph, 2).verdict == Verdict::yes);
      }
    }
  }
}
