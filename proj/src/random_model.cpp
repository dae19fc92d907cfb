#include "dichroma/random_model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dichroma/rng.hpp"

namespace dichroma {

void validate(const ModelParams& params) {
  if (params.n < 1) throw InputError("model requires n >= 1");
  if (!(params.p >= 0.0 && params.p <= 0.5)) {
    throw InputError("model requires 0 <= p <= 1/2, got " + std::to_string(params.p));
  }
}

Digraph sample(const ModelParams& params) {
  validate(params);
  const std::size_t n = params.n;
  const double edge_prob = 2.0 * params.p;
  Rng rng(params.seed);
  std::vector<Arc> arcs;
  arcs.reserve(static_cast<std::size_t>(edge_prob * n * (n - 1) / 2.0 * 1.1) + 16);
  for (Vertex u = 0; u + 1 < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (!rng.bernoulli(edge_prob)) continue;
      if (rng.next() >> 63) {
        arcs.emplace_back(v, u);
      } else {
        arcs.emplace_back(u, v);
      }
    }
  }
  return Digraph(n, std::move(arcs));
}

double p_theorem1(double delta, std::size_t n) {
  if (!(delta >= 1.0) || n < 1) throw InputError("p_theorem1 requires Delta >= 1 and n >= 1");
  const double p = delta / (4.0 * std::numbers::e * static_cast<double>(n));
  if (p > 0.5) {
    throw InputError("p = Delta/(4en) = " + std::to_string(p) + " exceeds 1/2");
  }
  return p;
}

double p_theorem2(std::size_t k, std::size_t n) {
  if (k < 1 || n < 1) throw InputError("p_theorem2 requires k >= 1 and n >= 1");
  const double p = static_cast<double>(k * k) / static_cast<double>(n);
  if (p > 0.5) throw InputError("p = k^2/n = " + std::to_string(p) + " exceeds 1/2");
  return p;
}

Digraph sample_arc_model(std::size_t n, double q, std::uint64_t seed) {
  if (!(q >= 0.0 && q <= 1.0)) throw InputError("arc probability must lie in [0, 1]");
  Rng rng(seed);
  std::vector<Arc> arcs;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = 0; v < n; ++v) {
      if (u != v && rng.bernoulli(q)) arcs.emplace_back(u, v);
    }
  }
  return Digraph(n, std::move(arcs));
}

}  // namespace dichroma
