#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dichroma/serialize.hpp"
#include "dichroma/solver.hpp"

namespace dichroma::harness {

inline constexpr int kSchemaVersion = 1;

/// A seeded Monte Carlo sweep. `params` holds the experiment-specific block;
/// missing keys are filled with the experiment's defaults on load so the
/// resolved config echoed into the summary is fully explicit.
struct ExperimentConfig {
  std::string experiment;  // "E1" .. "E7"
  std::size_t trials = 1;
  std::uint64_t master_seed = 0;
  std::size_t threads = 1;
  SolverBudget budget{};
  Json params = Json::object();
  std::filesystem::path output_path;
};

/// Parses and validates; throws InputError on unknown experiments, unknown
/// parameter keys or out-of-range values.
ExperimentConfig config_from_json(const Json& j);
ExperimentConfig load_config(const std::filesystem::path& path);
Json to_json(const ExperimentConfig& c);

/// Threads actually used: DICHROMA_THREADS when set, else the config value.
std::size_t effective_threads(const ExperimentConfig& c);

enum class TrialStatus { ok, undecided, failed };
const char* to_string(TrialStatus s);
TrialStatus trial_status_from(const std::string& s);

/// One row of trials.csv. `measured` is aligned with experiment_columns().
/// Non-ok trials may carry NaN for values that could not be computed.
struct TrialRecord {
  std::size_t trial_index = 0;
  std::uint64_t seed = 0;
  TrialStatus status = TrialStatus::ok;
  std::vector<double> measured;

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

/// Side output of a trial that is written next to the report but is not part
/// of the CSV (E4 certificates).
struct TrialArtifact {
  std::string file_name;
  Json content;
};

struct TrialOutput {
  TrialRecord record;
  std::optional<TrialArtifact> artifact;
};

std::vector<std::string> experiment_columns(const ExperimentConfig& c);

/// Runs trial `index` from its derived seed. Exceptions from the trial body
/// become status `failed`.
TrialOutput run_trial(const ExperimentConfig& c, std::size_t index);

/// Aggregates records (in any order) into the summary document. Only `ok`
/// trials enter the statistics.
Json summarize(const ExperimentConfig& c, std::vector<TrialRecord> records);

std::string format_value(double x);
std::string csv_header(const ExperimentConfig& c);
std::string csv_row(const TrialRecord& r);
/// Parses trials.csv; throws InputError on malformed content.
std::vector<TrialRecord> parse_csv(const std::string& text, const std::vector<std::string>& columns);

struct RunResult {
  std::filesystem::path csv_path;
  std::filesystem::path summary_path;
  Json summary;
  bool all_hard_passed = false;
};

/// Writes trials.csv, summary.json and any artifacts under output_path.
/// Throws InputError when the output directory cannot be created.
RunResult run_experiment(const ExperimentConfig& c);

struct VerifyResult {
  bool pass = false;
  std::string detail;
  std::optional<std::size_t> differing_trial;
};

/// Re-runs a deterministic 5% sample of trials (at least one) from their
/// seeds, and recomputes every summary aggregate from the CSV rows.
VerifyResult verify_report(const std::filesystem::path& report_dir);

}  // namespace dichroma::harness
