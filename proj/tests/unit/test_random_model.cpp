#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "dichroma/random_model.hpp"
#include "dichroma/rng.hpp"
#include "fixtures.hpp"

using namespace dichroma;

namespace {

// The sampling rule re-implemented straight from its documentation on top of
// the standard engine.
std::vector<Arc> reference_sample(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::vector<Arc> arcs;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      const double x = static_cast<double>(engine() >> 11) / 9007199254740992.0;
      if (!(x < 2 * p)) continue;
      if (engine() >> 63) {
        arcs.emplace_back(v, u);
      } else {
        arcs.emplace_back(u, v);
      }
    }
  }
  std::ranges::sort(arcs);
  return arcs;
}

}  // namespace

TEST_SUITE("random-model") {
  TEST_CASE("engine and seed derivation are the documented ones") {
    // The standard fixes the 10000th output of a default-seeded mt19937_64.
    Rng rng(5489);
    std::uint64_t x = 0;
    for (int i = 0; i < 10000; ++i) x = rng.next();
    CHECK(x == 9981545732273789042ULL);
    // First SplitMix64 output from state 0.
    CHECK(mix64(0) == 0xE220A8397B1DCDAFULL);
    CHECK(derive_seed(7, 3) == mix64(7 ^ mix64(3)));
    CHECK(derive_seed(7, 3) != derive_seed(7, 4));
    CHECK(derive_seed(7, 3) != derive_seed(8, 3));
  }

  TEST_CASE("uniform and below stay in range") {
    Rng rng(1);
    for (int i = 0; i < 10000; ++i) {
      const double u = rng.uniform();
      CHECK(u >= 0.0);
      CHECK(u < 1.0);
      CHECK(rng.below(7) < 7);
    }
  }

  TEST_CASE("sample examples") {
    const Digraph empty = sample({5, 0.0, 123});
    CHECK(empty.order() == 5);
    CHECK(empty.arc_count() == 0);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const Digraph d = sample({2, 0.5, seed});
      REQUIRE(d.arc_count() == 1);
      const auto [u, v] = d.arcs()[0];
      CHECK(((u == 0 && v == 1) || (u == 1 && v == 0)));
    }
  }

  TEST_CASE("both orientations of the forced edge occur across seeds") {
    std::size_t forward = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) forward += sample({2, 0.5, seed}).arcs()[0].first == 0;
    CHECK(forward > 0);
    CHECK(forward < 200);
  }

  TEST_CASE("sampling matches the reference stream exactly") {
    for (std::uint64_t seed : {0ULL, 1ULL, 42ULL, 0xFFFFFFFFFFFFFFFFULL}) {
      for (double p : {0.01, 0.1, 0.37, 0.5}) {
        CHECK(sample({40, p, seed}).arcs() == reference_sample(40, p, seed));
      }
    }
  }

  TEST_CASE("same seed gives the same digraph, other seeds differ") {
    CHECK(sample({60, 0.2, 9}) == sample({60, 0.2, 9}));
    CHECK_FALSE(sample({60, 0.2, 9}) == sample({60, 0.2, 10}));
  }

  TEST_CASE("never a digon or a loop") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const Digraph d = sample({30, 0.5, seed});
      CHECK(count_digons(d) == 0);
      CHECK(d.arc_count() == 30 * 29 / 2);
      for (const auto& [u, v] : d.arcs()) CHECK(u != v);
    }
  }

  TEST_CASE("per-pair edge frequency and orientation split within 4 sigma") {
    const std::size_t n = 12, samples = 4000;
    const double p = 0.15;
    std::vector<std::size_t> present(n * n, 0), forward(n * n, 0);
    for (std::uint64_t s = 0; s < samples; ++s) {
      const Digraph d = sample({n, p, derive_seed(77, s)});
      for (const auto& [u, v] : d.arcs()) {
        const auto lo = std::min(u, v), hi = std::max(u, v);
        ++present[lo * n + hi];
        forward[lo * n + hi] += u < v;
      }
    }
    const double sigma_edge = std::sqrt(samples * 2 * p * (1 - 2 * p));
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = u + 1; v < n; ++v) {
        const double k = static_cast<double>(present[u * n + v]);
        CHECK(std::abs(k - samples * 2 * p) <= 4 * sigma_edge);
        const double sigma_dir = std::sqrt(k * 0.25);
        CHECK(std::abs(static_cast<double>(forward[u * n + v]) - k / 2) <= 4 * sigma_dir);
      }
    }
  }

  TEST_CASE("mean arc count is 2p C(n,2) within 3 standard errors") {
    const std::size_t n = 100, samples = 2000;
    const double p = 0.1, pairs = n * (n - 1) / 2.0;
    double sum = 0;
    for (std::uint64_t s = 0; s < samples; ++s) sum += static_cast<double>(sample({n, p, derive_seed(3, s)}).arc_count());
    const double stderr_ = std::sqrt(pairs * 2 * p * (1 - 2 * p) / samples);
    CHECK(std::abs(sum / samples - 990.0) <= 3 * stderr_);
  }

  TEST_CASE("invalid parameters") {
    CHECK_THROWS_AS(sample({0, 0.1, 1}), InputError);
    CHECK_THROWS_AS(sample({5, 0.51, 1}), InputError);
    CHECK_THROWS_AS(sample({5, -0.1, 1}), InputError);
    CHECK_THROWS_AS(sample({5, std::nan(""), 1}), InputError);
  }

  TEST_CASE("p_theorem1") {
    CHECK(p_theorem1(16, 3000) == doctest::Approx(4.905059215619231e-4).epsilon(1e-12));
    CHECK(p_theorem1(1, 1000) == doctest::Approx(9.196986029286058e-5).epsilon(1e-12));
    CHECK_THROWS_AS(p_theorem1(4 * std::numbers::e, 1), InputError);
    CHECK(p_theorem1(2 * std::numbers::e, 1) == doctest::Approx(0.5));
    CHECK_THROWS_AS(p_theorem1(0.5, 10), InputError);
  }

  TEST_CASE("p_theorem2") {
    CHECK(p_theorem2(3, 500) == doctest::Approx(0.018));
    CHECK(p_theorem2(3, 18) == 0.5);
    CHECK_THROWS_AS(p_theorem2(10, 100), InputError);
    CHECK_THROWS_AS(p_theorem2(0, 100), InputError);
  }

  TEST_CASE("arc model produces digons and respects extremes") {
    CHECK(sample_arc_model(5, 1.0, 1) == test::bidirected_complete(5));
    CHECK(sample_arc_model(5, 0.0, 1).arc_count() == 0);
    std::size_t digons = 0;
    for (std::uint64_t s = 0; s < 20; ++s) digons += count_digons(sample_arc_model(8, 0.5, s));
    CHECK(digons > 0);
    CHECK_THROWS_AS(sample_arc_model(3, 1.5, 0), InputError);
  }
}
