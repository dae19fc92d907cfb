#include "dichroma/bounds.hpp"

#include <cmath>
#include <numbers>

#include "dichroma/error.hpp"

namespace dichroma {

namespace {

constexpr double kE = std::numbers::e;

double require(const std::map<std::string, double>& params, const char* key) {
  auto it = params.find(key);
  if (it == params.end()) throw InputError(std::string("missing parameter '") + key + "'");
  return it->second;
}

std::size_t require_count(const std::map<std::string, double>& params, const char* key) {
  const double v = require(params, key);
  if (!(v >= 0.0) || v != std::floor(v)) {
    throw InputError(std::string("parameter '") + key + "' must be a non-negative integer");
  }
  return static_cast<std::size_t>(v);
}

}  // namespace

double expected_cycles_of_length(double delta, std::size_t l) {
  if (l < 3) throw InputError("cycle length must be at least 3");
  if (!(delta >= 1.0)) throw InputError("Delta must be at least 1");
  return std::pow(delta / 4.0, static_cast<double>(l));
}

ShortCycleBound short_cycle_total_bound(double delta, std::size_t g) {
  if (g < 4) throw InputError("short_cycle_total_bound requires g >= 4");
  ShortCycleBound b;
  for (std::size_t l = 3; l < g; ++l) b.sum += expected_cycles_of_length(delta, l);
  b.cap = std::pow(delta, static_cast<double>(g - 1));
  return b;
}

double excess_degree_expectation_bound(double n, double delta) {
  if (!(delta >= 1.0)) throw InputError("Delta must be at least 1");
  if (!(n >= 0.0)) throw InputError("n must be non-negative");
  return n * delta * std::exp2(-delta);
}

double mas_bound(double n, double p) {
  if (!(p > 0.0 && p < 1.0)) throw InputError("mas_bound requires 0 < p < 1");
  if (!(n * p > 0.0)) throw InputError("mas_bound requires np > 0");
  const double log_q = -std::log1p(-p);
  return (2.0 / log_q) * (std::log(n * p) + 3.0 * kE);
}

double claim3_mas_bound(double n, double delta) {
  if (!(delta >= 2.0)) throw InputError("claim3_mas_bound requires Delta >= 2");
  return 4.0 * kE * n * std::log(delta) / delta;
}

double chi_lower_theorem1(double delta) {
  if (!(delta >= 2.0)) throw InputError("chi_lower_theorem1 requires Delta >= 2");
  return delta / (5.0 * kE * std::log(delta));
}

double critical_subset_term(double n, double k, std::size_t t) {
  if (t < 3 || static_cast<double>(t) > n) throw InputError("critical_subset_term requires 3 <= t <= n");
  const double k2 = k * k;
  return std::pow(7.0 * static_cast<double>(t) * k2 * k2 / n, static_cast<double>(t));
}

double eq1_bound(double n, double k, double eps) {
  if (!(eps > 0.0)) throw InputError("eq1_bound requires eps > 0");
  const double top = std::floor(eps * n);
  if (top < 3.0) throw InputError("eq1_bound requires eps * n >= 3");
  double best = 0.0;
  for (std::size_t t = 3; static_cast<double>(t) <= top; ++t) {
    best = std::max(best, critical_subset_term(n, k, t));
  }
  return eps * n * best;
}

BoundReport evaluate_bound(const std::string& name, const std::map<std::string, double>& params) {
  BoundReport r;
  r.name = name;
  auto take = [&](const char* key) {
    const double v = require(params, key);
    r.inputs[key] = v;
    return v;
  };
  auto take_count = [&](const char* key) {
    const std::size_t v = require_count(params, key);
    r.inputs[key] = static_cast<double>(v);
    return v;
  };
  if (name == "expected_cycles_of_length") {
    const double delta = take("delta");
    r.theoretical = expected_cycles_of_length(delta, take_count("l"));
  } else if (name == "short_cycle_total_bound") {
    const double delta = take("delta");
    const auto b = short_cycle_total_bound(delta, take_count("g"));
    r.theoretical = b.sum;
    r.auxiliary["cap"] = b.cap;
  } else if (name == "excess_degree_expectation_bound") {
    const double n = take("n");
    r.theoretical = excess_degree_expectation_bound(n, take("delta"));
  } else if (name == "mas_bound") {
    const double n = take("n");
    r.theoretical = mas_bound(n, take("p"));
  } else if (name == "claim3_mas_bound") {
    const double n = take("n");
    r.theoretical = claim3_mas_bound(n, take("delta"));
  } else if (name == "chi_lower_theorem1") {
    r.theoretical = chi_lower_theorem1(take("delta"));
  } else if (name == "critical_subset_term") {
    const double n = take("n");
    const double k = take("k");
    r.theoretical = critical_subset_term(n, k, take_count("t"));
  } else if (name == "eq1_bound") {
    const double n = take("n");
    const double k = take("k");
    r.theoretical = eq1_bound(n, k, take("eps"));
  } else {
    throw InputError("unknown bound '" + name + "'");
  }
  return r;
}

}  // namespace dichroma
