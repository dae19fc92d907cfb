#include <set>
#include <sstream>

#include "doctest.h"
#include "dichroma/digraph.hpp"
#include "dichroma/io.hpp"
#include "fixtures.hpp"

using namespace dichroma;
using namespace dichroma::test;

namespace {

const Digraph kDigon(2, {{0, 1}, {1, 0}});

// Cycles of the underlying multigraph by brute force: every sequence of
// distinct adjacent vertices closing back on its start, divided by the 2l
// rotations and reflections (digons counted separately).
std::vector<std::size_t> brute_force_cycle_counts(const Digraph& d, std::size_t max_len) {
  const std::size_t n = d.order();
  auto adjacent = [&](Vertex a, Vertex b) { return d.has_arc(a, b) || d.has_arc(b, a); };
  std::vector<std::size_t> closed(max_len + 1, 0);
  std::vector<Vertex> seq;
  std::vector<char> used(n, 0);
  auto rec = [&](auto& self) -> void {
    const std::size_t len = seq.size();
    if (len >= 3 && adjacent(seq.back(), seq.front())) ++closed[len];
    if (len == max_len) return;
    for (Vertex w = 0; w < n; ++w) {
      if (used[w] || (len > 0 && !adjacent(seq.back(), w))) continue;
      used[w] = 1;
      seq.push_back(w);
      self(self);
      seq.pop_back();
      used[w] = 0;
    }
  };
  rec(rec);
  std::vector<std::size_t> counts(max_len + 1, 0);
  for (std::size_t l = 3; l <= max_len; ++l) counts[l] = closed[l] / (2 * l);
  if (max_len >= 2) counts[2] = count_digons(d);
  return counts;
}

}  // namespace

TEST_SUITE("digraph-core") {
  TEST_CASE("construction rejects loops, parallel arcs and bad ids") {
    CHECK_THROWS_AS(Digraph(3, {{1, 1}}), InputError);
    CHECK_THROWS_AS(Digraph(3, {{0, 1}, {0, 1}}), InputError);
    CHECK_THROWS_AS(Digraph(3, {{0, 3}}), InputError);
    CHECK_NOTHROW(Digraph(2, {{0, 1}, {1, 0}}));
  }

  TEST_CASE("adjacency mirrors the arc list") {
    const Digraph d(4, {{2, 0}, {0, 1}, {3, 0}, {0, 3}});
    CHECK(d.arcs() == std::vector<Arc>{{0, 1}, {0, 3}, {2, 0}, {3, 0}});
    std::size_t out_sum = 0, in_sum = 0;
    for (Vertex v = 0; v < 4; ++v) {
      out_sum += d.out_degree(v);
      in_sum += d.in_degree(v);
      for (Vertex w : d.out(v)) CHECK(d.has_arc(v, w));
      for (Vertex u : d.in(v)) CHECK(d.has_arc(u, v));
    }
    CHECK(out_sum == 4);
    CHECK(in_sum == 4);
  }

  TEST_CASE("degrees") {
    CHECK(degrees(kDigon, 0) == Degrees{1, 1, 2});
    for (Vertex v = 0; v < 3; ++v) CHECK(degrees(directed_cycle(3), v) == Degrees{1, 1, 2});
    CHECK(degrees(Digraph(3), 2) == Degrees{0, 0, 0});
    CHECK_THROWS_AS(degrees(Digraph(3), 3), InputError);
  }

  TEST_CASE("max_total_degree") {
    CHECK(max_total_degree(bidirected_complete(3)) == 4);
    CHECK(max_total_degree(directed_path(3)) == 2);
    CHECK(max_total_degree(Digraph(5)) == 0);
    CHECK(max_total_degree(Digraph()) == 0);
  }

  TEST_CASE("strongly connected components") {
    CHECK(strongly_connected_components(directed_cycle(3)) == std::vector<VertexSet>{{0, 1, 2}});
    const auto dag = strongly_connected_components(transitive_tournament(5));
    CHECK(dag.size() == 5);
    // Topological: sources first.
    CHECK(dag.front() == VertexSet{0});
    CHECK(dag.back() == VertexSet{4});

    const auto two = strongly_connected_components(disjoint_union(kDigon, kDigon));
    REQUIRE(two.size() == 2);
    CHECK(two[0].size() == 2);
    CHECK(two[1].size() == 2);

    // Cycle 0->1->2->0 feeding 3<->4: {0,1,2} precedes {3,4}.
    const Digraph chain(5, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 3}});
    CHECK(strongly_connected_components(chain) == std::vector<VertexSet>{{0, 1, 2}, {3, 4}});
  }

  TEST_CASE("SCC partition survives relabeling and its inverse") {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t n = 1 + rng.below(12);
      const Digraph d = sample_arc_model(n, 0.15, rng.next());
      const auto perm = random_permutation(n, rng);
      std::vector<Vertex> inverse(n);
      for (Vertex v = 0; v < n; ++v) inverse[perm[v]] = v;
      const Digraph back = relabel(relabel(d, perm), inverse);
      CHECK(back == d);

      auto as_set = [](std::vector<VertexSet> parts) { return std::set<VertexSet>(parts.begin(), parts.end()); };
      std::vector<VertexSet> mapped;
      for (const auto& comp : strongly_connected_components(relabel(d, perm))) {
        VertexSet orig;
        for (Vertex v : comp) orig.push_back(inverse[v]);
        std::ranges::sort(orig);
        mapped.push_back(orig);
      }
      CHECK(as_set(mapped) == as_set(strongly_connected_components(d)));
    }
  }

  TEST_CASE("is_acyclic_induced") {
    const Digraph c3 = directed_cycle(3);
    CHECK_FALSE(is_acyclic_induced(c3, VertexSet{0, 1, 2}));
    CHECK(is_acyclic_induced(c3, VertexSet{0, 1}));
    CHECK(is_acyclic_induced(c3, VertexSet{1, 2}));
    CHECK(is_acyclic_induced(c3, VertexSet{0, 2}));
    CHECK_FALSE(is_acyclic_induced(kDigon, VertexSet{0, 1}));
    CHECK(is_acyclic_induced(c3, VertexSet{}));
    CHECK_FALSE(is_acyclic_induced(c3, std::vector<Vertex>{2, 0, 1, 0}));
  }

  TEST_CASE("girth") {
    CHECK(girth(kDigon) == 2);
    CHECK(girth(transitive_tournament(3)) == 3);
    CHECK_FALSE(girth(directed_path(6)).has_value());
    CHECK(girth(directed_cycle(7)) == 7);
    CHECK_FALSE(girth(Digraph()).has_value());
  }

  TEST_CASE("digirth") {
    CHECK(digirth(kDigon) == 2);
    CHECK_FALSE(digirth(transitive_tournament(3)).has_value());
    const Digraph chorded(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {0, 2}});
    CHECK(digirth(chorded) == 4);
  }

  TEST_CASE("shortest_dicycle_through respects the length cap") {
    const Digraph c5 = directed_cycle(5);
    const auto c = shortest_dicycle_through(c5, 2);
    REQUIRE(c.has_value());
    CHECK(c->vertices == std::vector<Vertex>{2, 3, 4, 0, 1});
    CHECK(c->directed);
    CHECK_FALSE(shortest_dicycle_through(c5, 2, 4).has_value());
  }

  TEST_CASE("enumerate_short_cycles examples") {
    const auto tri = enumerate_short_cycles(transitive_tournament(3), 4);
    REQUIRE(tri.cycles.size() == 1);
    CHECK(tri.cycles[0].vertices == std::vector<Vertex>{0, 1, 2});
    CHECK(enumerate_short_cycles(directed_cycle(5), 5).cycles.empty());
    CHECK(enumerate_short_cycles(directed_cycle(5), 6).cycles.size() == 1);
    const auto dig = enumerate_short_cycles(kDigon, 3);
    REQUIRE(dig.cycles.size() == 1);
    CHECK(dig.cycles[0].length() == 2);
    CHECK_THROWS_AS(enumerate_short_cycles(kDigon, 2), InputError);
  }

  TEST_CASE("every orientation of K4 has exactly 4 short triangles") {
    for (std::uint64_t mask = 0; mask < 64; ++mask) {
      const Digraph d = oriented_complete(4, mask);
      // Oracle: vertex triples whose three pairs are all adjacent.
      auto adj = [&](Vertex a, Vertex b) { return d.has_arc(a, b) || d.has_arc(b, a); };
      std::size_t triples = 0;
      for (Vertex a = 0; a < 4; ++a)
        for (Vertex b = a + 1; b < 4; ++b)
          for (Vertex c = b + 1; c < 4; ++c) triples += adj(a, b) && adj(b, c) && adj(a, c);
      const auto cyc = enumerate_short_cycles(d, 4);
      CHECK(triples == 4);
      CHECK(cyc.cycles.size() == triples);
      for (const auto& c : cyc.cycles) CHECK(is_valid_cycle(d, c));
    }
  }

  TEST_CASE("enumeration matches brute-force counts and canonical form") {
    Rng rng(5);
    for (int trial = 0; trial < 150; ++trial) {
      const std::size_t n = 2 + rng.below(6);
      const Digraph d = sample_arc_model(n, 0.3, rng.next());
      const std::size_t g = 3 + rng.below(5);
      const auto counts = brute_force_cycle_counts(d, g - 1);
      const auto found = enumerate_short_cycles(d, g);
      REQUIRE_FALSE(found.overflow);
      std::vector<std::size_t> by_len(g, 0);
      std::set<std::vector<Vertex>> distinct;
      for (const auto& c : found.cycles) {
        CHECK(is_valid_cycle(d, c));
        CHECK(c.vertices.front() == *std::ranges::min_element(c.vertices));
        if (c.length() >= 3) CHECK(c.vertices[1] < c.vertices.back());
        ++by_len[c.length()];
        distinct.insert(c.vertices);
      }
      CHECK(distinct.size() == found.cycles.size());
      for (std::size_t l = 2; l < g; ++l) CHECK(by_len[l] == counts[l]);
    }
  }

  TEST_CASE("enumeration overflow is explicit") {
    const auto r = enumerate_short_cycles(bidirected_complete(6), 6, 10);
    CHECK(r.overflow);
    CHECK(r.count == 11);
  }

  TEST_CASE("structural invariants on random digraphs") {
    Rng rng(99);
    for (int trial = 0; trial < 300; ++trial) {
      const std::size_t n = 1 + rng.below(10);
      const Digraph d = sample_arc_model(n, 0.05 + 0.3 * rng.uniform(), rng.next());
      const auto s = random_subset(n, rng);
      // acyclic(D[S]) <=> digirth(D[S]) absent
      CHECK(is_acyclic_induced(d, s) == !digirth(induced_subdigraph(d, s).graph).has_value());
      const auto gi = girth(d);
      if (const auto dg = digirth(d)) {
        REQUIRE(gi.has_value());
        CHECK(*gi <= *dg);
      }
      for (std::size_t g = 3; g <= 6; ++g) {
        const bool none = enumerate_short_cycles(d, g).cycles.empty();
        CHECK(none == (!gi || *gi >= g));
      }
    }
  }

  TEST_CASE("is_valid_cycle") {
    const Digraph tt = transitive_tournament(3);
    CHECK(is_valid_cycle(tt, CycleWitness{{0, 1, 2}, false}));
    CHECK_FALSE(is_valid_cycle(tt, CycleWitness{{0, 1, 2}, true}));
    CHECK(is_valid_cycle(kDigon, CycleWitness{{0, 1}, true}));
    CHECK(is_valid_cycle(kDigon, CycleWitness{{1, 0}, false}));
    CHECK_FALSE(is_valid_cycle(Digraph(2, {{0, 1}}), CycleWitness{{0, 1}, false}));
    CHECK_FALSE(is_valid_cycle(directed_cycle(3), CycleWitness{{0, 1, 1}, true}));
    CHECK_FALSE(is_valid_cycle(directed_cycle(3), CycleWitness{{0, 1, 5}, true}));
  }

  TEST_CASE("induced subdigraphs and vertex removal keep the id map") {
    const Digraph d = directed_cycle(5);
    const auto sub = induced_subdigraph(d, VertexSet{1, 2, 4});
    CHECK(sub.to_parent == std::vector<Vertex>{1, 2, 4});
    CHECK(sub.graph.arcs() == std::vector<Arc>{{0, 1}});
    const auto rest = remove_vertices(d, VertexSet{0});
    CHECK(rest.to_parent == std::vector<Vertex>{1, 2, 3, 4});
    CHECK(rest.graph == directed_path(4));
    CHECK_THROWS_AS(induced_subdigraph(d, VertexSet{7}), InputError);
  }
}

TEST_SUITE("io") {
  TEST_CASE("edge list round trip") {
    const Digraph d(5, {{0, 1}, {1, 0}, {3, 4}, {4, 2}});
    std::stringstream buf;
    write_edge_list(buf, d);
    CHECK(buf.str() == "5 4\n0 1\n1 0\n3 4\n4 2\n");
    CHECK(read_edge_list(buf) == d);
  }

  TEST_CASE("comments and blank lines are ignored") {
    std::istringstream in("# a digon\n\n2 2   # header\n0 1\n# between\n1 0 # back\n");
    CHECK(read_edge_list(in) == kDigon);
  }

  TEST_CASE("malformed edge lists are rejected") {
    auto parse = [](const std::string& s) {
      std::istringstream in(s);
      return read_edge_list(in);
    };
    CHECK_THROWS_AS(parse(""), InputError);
    CHECK_THROWS_AS(parse("3\n"), InputError);
    CHECK_THROWS_AS(parse("3 2\n0 1\n"), InputError);
    CHECK_THROWS_AS(parse("3 1\n0 1\n1 2\n"), InputError);
    CHECK_THROWS_AS(parse("3 1\n0 3\n"), InputError);
    CHECK_THROWS_AS(parse("3 1\n1 1\n"), InputError);
    CHECK_THROWS_AS(parse("3 2\n0 1\n0 1\n"), InputError);
    CHECK_THROWS_AS(parse("3 1\n0 x\n"), InputError);
    CHECK_THROWS_AS(parse("3 1\n0 1 2\n"), InputError);
    CHECK_THROWS_AS(parse("-3 0\n"), InputError);
  }

  TEST_CASE("DOT export lists every vertex and arc") {
    std::ostringstream out;
    write_dot(out, Digraph(3, {{0, 2}}));
    const std::string s = out.str();
    CHECK(s.starts_with("digraph"));
    CHECK(s.find("1;") != std::string::npos);
    CHECK(s.find("0 -> 2;") != std::string::npos);
  }
}
