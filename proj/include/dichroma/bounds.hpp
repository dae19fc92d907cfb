#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>

namespace dichroma {

/// One analytic formula evaluated at concrete inputs, optionally paired with
/// the Monte Carlo statistic it is compared against. All logarithms are
/// natural.
struct BoundReport {
  std::string name;
  std::map<std::string, double> inputs;
  double theoretical = 0.0;
  /// Companion values (e.g. a coarser cap) reported alongside.
  std::map<std::string, double> auxiliary;
  std::optional<double> empirical_mean;
  std::optional<double> empirical_stderr;
  std::optional<std::size_t> trials;

  void attach_empirical(double mean, double stderr_, std::size_t n) {
    empirical_mean = mean;
    empirical_stderr = stderr_;
    trials = n;
  }
};

/// (Delta/4)^l, the bound on E[N_l] in D(n, Delta/(4en)). Requires l >= 3.
double expected_cycles_of_length(double delta, std::size_t l);

struct ShortCycleBound {
  double sum = 0.0;  // sum_{l=3}^{g-1} (Delta/4)^l
  double cap = 0.0;  // Delta^{g-1}
};
/// Requires g >= 4.
ShortCycleBound short_cycle_total_bound(double delta, std::size_t g);

/// n * Delta / 2^Delta, the bound on E[ex(D)].
double excess_degree_expectation_bound(double n, double delta);

/// (2 / ln q)(ln(np) + 3e) with q = 1/(1-p). Requires 0 < p < 1.
double mas_bound(double n, double p);

/// 4 e n ln(Delta) / Delta. Requires Delta >= 2.
double claim3_mas_bound(double n, double delta);

/// Delta / (5 e ln Delta). Requires Delta >= 2.
double chi_lower_theorem1(double delta);

/// (7 t k^4 / n)^t. Requires 3 <= t <= n.
double critical_subset_term(double n, double k, std::size_t t);

/// eps*n * max over integer t in [3, floor(eps*n)] of critical_subset_term.
/// Requires eps*n >= 3.
double eq1_bound(double n, double k, double eps);

/// Evaluates a bound by name with inputs from `params` (names as in the
/// function signatures above: delta, l, g, n, p, k, t, eps). Unknown names or
/// missing inputs throw InputError.
BoundReport evaluate_bound(const std::string& name, const std::map<std::string, double>& params);

}  // namespace dichroma
