#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dichroma/bounds.hpp"
#include "dichroma/harness.hpp"

namespace dichroma::harness::detail {

struct Stats {
  std::size_t count = 0;
  double mean = 0.0;
  double stderr_ = 0.0;  // sample standard deviation / sqrt(count)
  double min = 0.0;
  double max = 0.0;
};

Stats compute_stats(const std::vector<double>& xs);

/// Column access over records sorted by trial index.
class Table {
 public:
  Table(std::vector<std::string> columns, const std::vector<TrialRecord>& sorted);

  /// Values of `ok` trials.
  std::vector<double> ok_values(const std::string& column) const;
  /// Non-NaN values of every trial regardless of status.
  std::vector<double> present_values(const std::string& column) const;
  std::size_t count(TrialStatus s) const;
  std::size_t size() const { return records_.size(); }

 private:
  std::size_t index_of(const std::string& column) const;

  std::vector<std::string> columns_;
  const std::vector<TrialRecord>& records_;
};

class SummaryBuilder {
 public:
  void bound(const BoundReport& r);
  void hard(const std::string& name, bool passed, const std::string& detail);
  /// Reported only. `conditional` marks claims whose hypotheses are not met
  /// (or not checkable) at the configured parameters.
  void soft(const std::string& name, bool passed, const std::string& detail, bool conditional = false);

  /// Hard check of a finite-n expectation inequality: mean <= bound + 3 stderr.
  void mean_at_most(const std::string& name, const Stats& s, double bound);
  /// Hard check that a 0/1 column is 1 in every listed row.
  void all_true(const std::string& name, const std::vector<double>& flags);
  /// Hard check that a count column sums to zero.
  void all_zero(const std::string& name, const std::vector<double>& counts);

  Json bounds = Json::array();
  Json assertions = Json::array();
};

struct Experiment {
  std::string id;
  std::string description;
  Json defaults;
  std::function<void(const ExperimentConfig&)> validate;
  std::function<std::vector<std::string>(const Json& params)> columns;
  /// Body of one trial; status and measured values only.
  std::function<TrialOutput(const ExperimentConfig&, std::size_t index, std::uint64_t seed)> run;
  std::function<void(const ExperimentConfig&, const Table&, SummaryBuilder&)> summarize;
};

/// Throws InputError for unknown ids.
const Experiment& find_experiment(const std::string& id);
const std::vector<Experiment>& all_experiments();

}  // namespace dichroma::harness::detail
