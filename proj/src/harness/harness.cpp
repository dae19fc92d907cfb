#include "dichroma/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "dichroma/rng.hpp"
#include "experiments.hpp"

namespace dichroma::harness {

namespace fs = std::filesystem;
using detail::find_experiment;

namespace {

constexpr const char* kCsvName = "trials.csv";
constexpr const char* kSummaryName = "summary.json";

// Merges user parameters over the experiment defaults. Keys must exist in the
// defaults and keep their JSON kind; integers are accepted for real-valued
// parameters.
Json resolve_params(const Json& defaults, const Json& given) {
  if (!given.is_object()) throw InputError("config: 'params' must be an object");
  Json out = defaults;
  for (const auto& [key, value] : given.items()) {
    if (!defaults.contains(key)) throw InputError("config: unknown parameter '" + key + "'");
    const Json& d = defaults.at(key);
    if (d.is_number_float() && value.is_number()) {
      out[key] = value.get<double>();
    } else if (d.is_number_integer() && value.is_number_integer()) {
      if (value.is_number_integer() && !value.is_number_unsigned() && value.get<std::int64_t>() < 0) {
        throw InputError("config: parameter '" + key + "' must be non-negative");
      }
      out[key] = value.get<std::uint64_t>();
    } else if (d.type() == value.type()) {
      out[key] = value;
    } else {
      throw InputError("config: parameter '" + key + "' has the wrong type");
    }
  }
  return out;
}

std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw InputError("cannot read " + p.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const fs::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + p.string());
  out << content;
  if (!out) throw InputError("failed writing " + p.string());
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    parts.push_back(line.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return parts;
}

bool same_number(double a, double b) {
  if (a == b) return true;
  return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b));
}

// First path at which two JSON documents differ, numbers compared with a
// relative tolerance; empty when equal.
std::string first_difference(const Json& a, const Json& b, const std::string& path = "") {
  if (a.is_number() && b.is_number()) {
    return same_number(a.get<double>(), b.get<double>()) ? "" : path;
  }
  if (a.type() != b.type()) return path.empty() ? "/" : path;
  if (a.is_object()) {
    if (a.size() != b.size()) return path + " (keys)";
    for (const auto& [k, v] : a.items()) {
      if (!b.contains(k)) return path + "/" + k;
      if (auto d = first_difference(v, b.at(k), path + "/" + k); !d.empty()) return d;
    }
    return "";
  }
  if (a.is_array()) {
    if (a.size() != b.size()) return path + " (length)";
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (auto d = first_difference(a[i], b[i], path + "/" + std::to_string(i)); !d.empty()) return d;
    }
    return "";
  }
  return a == b ? "" : (path.empty() ? "/" : path);
}

std::vector<TrialOutput> run_trials(const ExperimentConfig& c, const std::vector<std::size_t>& indices) {
  std::vector<TrialOutput> outputs(indices.size());
  const std::size_t workers = std::min(effective_threads(c), std::max<std::size_t>(indices.size(), 1));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < indices.size();) outputs[i] = run_trial(c, indices[i]);
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return outputs;
}

std::vector<std::size_t> all_indices(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

std::string csv_text(const ExperimentConfig& c, std::vector<TrialRecord> records) {
  std::ranges::sort(records, {}, &TrialRecord::trial_index);
  std::string text = csv_header(c) + "\n";
  for (const auto& r : records) text += csv_row(r) + "\n";
  return text;
}

}  // namespace

ExperimentConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("config must be a JSON object");
  static const std::set<std::string> known{"schema_version", "experiment", "trials",      "master_seed",
                                           "threads",        "budget",     "params",      "output_path"};
  for (const auto& [key, _] : j.items()) {
    if (!known.contains(key)) throw InputError("config: unknown field '" + key + "'");
  }
  try {
    if (j.contains("schema_version") && j.at("schema_version").get<int>() != kSchemaVersion) {
      throw InputError("config: unsupported schema_version");
    }
    ExperimentConfig c;
    c.experiment = j.at("experiment").get<std::string>();
    const auto& e = find_experiment(c.experiment);
    const auto trials = j.at("trials").get<std::int64_t>();
    if (trials < 1) throw InputError("config: trials must be >= 1");
    c.trials = static_cast<std::size_t>(trials);
    c.master_seed = j.at("master_seed").get<std::uint64_t>();
    if (j.contains("threads")) {
      const auto threads = j.at("threads").get<std::int64_t>();
      if (threads < 1) throw InputError("config: threads must be >= 1");
      c.threads = static_cast<std::size_t>(threads);
    }
    if (j.contains("budget")) {
      const auto& b = j.at("budget");
      for (const auto& [key, _] : b.items()) {
        if (key != "node_limit" && key != "time_limit") throw InputError("config: unknown budget field '" + key + "'");
      }
      if (b.contains("node_limit")) c.budget.node_limit = b.at("node_limit").get<std::uint64_t>();
      if (b.contains("time_limit")) c.budget.time_limit = b.at("time_limit").get<double>();
    }
    validate(c.budget);
    c.params = resolve_params(e.defaults, j.value("params", Json::object()));
    c.output_path = j.at("output_path").get<std::string>();
    if (c.output_path.empty()) throw InputError("config: output_path must not be empty");
    e.validate(c);
    return c;
  } catch (const Json::exception& ex) {
    throw InputError(std::string("config: ") + ex.what());
  }
}

ExperimentConfig load_config(const fs::path& path) {
  const std::string text = read_file(path);
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& ex) {
    throw InputError("config " + path.string() + ": " + ex.what());
  }
  return config_from_json(j);
}

Json to_json(const ExperimentConfig& c) {
  return {{"schema_version", kSchemaVersion},
          {"experiment", c.experiment},
          {"trials", c.trials},
          {"master_seed", c.master_seed},
          {"threads", c.threads},
          {"budget", {{"node_limit", c.budget.node_limit}, {"time_limit", c.budget.time_limit}}},
          {"params", c.params},
          {"output_path", c.output_path.string()}};
}

std::size_t effective_threads(const ExperimentConfig& c) {
  if (const char* env = std::getenv("DICHROMA_THREADS"); env && *env) {
    std::size_t v = 0;
    const char* end = env + std::char_traits<char>::length(env);
    const auto [ptr, ec] = std::from_chars(env, end, v);
    if (ec != std::errc{} || ptr != end || v == 0) {
      throw InputError("DICHROMA_THREADS must be a positive integer");
    }
    return v;
  }
  return c.threads;
}

const char* to_string(TrialStatus s) {
  switch (s) {
    case TrialStatus::ok:
      return "ok";
    case TrialStatus::undecided:
      return "undecided";
    case TrialStatus::failed:
      return "failed";
  }
  return "?";
}

TrialStatus trial_status_from(const std::string& s) {
  if (s == "ok") return TrialStatus::ok;
  if (s == "undecided") return TrialStatus::undecided;
  if (s == "failed") return TrialStatus::failed;
  throw InputError("unknown trial status '" + s + "'");
}

std::vector<std::string> experiment_columns(const ExperimentConfig& c) {
  return find_experiment(c.experiment).columns(c.params);
}

TrialOutput run_trial(const ExperimentConfig& c, std::size_t index) {
  const std::uint64_t seed = derive_seed(c.master_seed, index);
  const std::size_t width = experiment_columns(c).size();
  TrialOutput out;
  try {
    out = find_experiment(c.experiment).run(c, index, seed);
  } catch (const std::exception&) {
    out = {};
    out.record = {index, seed, TrialStatus::failed, {}};
  }
  out.record.measured.resize(width, std::numeric_limits<double>::quiet_NaN());
  return out;
}

Json summarize(const ExperimentConfig& c, std::vector<TrialRecord> records) {
  std::ranges::sort(records, {}, &TrialRecord::trial_index);
  const auto& e = find_experiment(c.experiment);
  const auto columns = experiment_columns(c);
  const detail::Table table(columns, records);

  Json stats = Json::object();
  for (const auto& col : columns) {
    const auto s = detail::compute_stats(table.ok_values(col));
    stats[col] = {{"count", s.count}, {"mean", s.mean}, {"stderr", s.stderr_}, {"min", s.min}, {"max", s.max}};
  }
  detail::SummaryBuilder builder;
  e.summarize(c, table, builder);
  bool all_hard = true;
  for (const auto& a : builder.assertions) {
    if (a.at("kind") == "hard" && !a.at("passed").get<bool>()) all_hard = false;
  }
  std::uint64_t digest = 0xcbf29ce484222325ULL;
  for (const auto& r : records) digest = fnv1a(csv_row(r) + "\n", digest);

  Json config = to_json(c);
  config.erase("output_path");
  config.erase("threads");
  return {{"schema_version", kSchemaVersion},
          {"experiment", c.experiment},
          {"description", e.description},
          {"config", std::move(config)},
          {"columns", columns},
          {"trials", records.size()},
          {"status_counts",
           {{"ok", table.count(TrialStatus::ok)},
            {"undecided", table.count(TrialStatus::undecided)},
            {"failed", table.count(TrialStatus::failed)}}},
          {"statistics", std::move(stats)},
          {"bounds", std::move(builder.bounds)},
          {"assertions", std::move(builder.assertions)},
          {"all_hard_passed", all_hard},
          {"trial_digest", hex64(digest)}};
}

std::string format_value(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

std::string csv_header(const ExperimentConfig& c) {
  std::string h = "trial,seed,status";
  for (const auto& col : experiment_columns(c)) h += "," + col;
  return h;
}

std::string csv_row(const TrialRecord& r) {
  std::string row = std::to_string(r.trial_index) + "," + std::to_string(r.seed) + "," + to_string(r.status);
  for (double x : r.measured) row += "," + format_value(x);
  return row;
}

std::vector<TrialRecord> parse_csv(const std::string& text, const std::vector<std::string>& columns) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw InputError("CSV is empty");
  std::string expected = "trial,seed,status";
  for (const auto& col : columns) expected += "," + col;
  if (line != expected) throw InputError("CSV header does not match the experiment's columns");

  auto parse_uint = [](const std::string& s, std::size_t lineno) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
      throw InputError("CSV line " + std::to_string(lineno) + ": bad integer '" + s + "'");
    }
    return v;
  };
  auto parse_real = [](const std::string& s, std::size_t lineno) {
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
      throw InputError("CSV line " + std::to_string(lineno) + ": bad number '" + s + "'");
    }
    return v;
  };

  std::vector<TrialRecord> records;
  for (std::size_t lineno = 2; std::getline(in, line); ++lineno) {
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != columns.size() + 3) {
      throw InputError("CSV line " + std::to_string(lineno) + ": expected " + std::to_string(columns.size() + 3) +
                       " fields");
    }
    TrialRecord r;
    r.trial_index = parse_uint(cells[0], lineno);
    r.seed = parse_uint(cells[1], lineno);
    r.status = trial_status_from(cells[2]);
    for (std::size_t j = 3; j < cells.size(); ++j) r.measured.push_back(parse_real(cells[j], lineno));
    records.push_back(std::move(r));
  }
  return records;
}

RunResult run_experiment(const ExperimentConfig& c) {
  std::error_code ec;
  fs::create_directories(c.output_path, ec);
  if (ec || !fs::is_directory(c.output_path)) {
    throw InputError("cannot create output directory " + c.output_path.string());
  }
  auto outputs = run_trials(c, all_indices(c.trials));

  std::vector<TrialRecord> records;
  records.reserve(outputs.size());
  for (auto& o : outputs) {
    if (o.artifact) {
      const fs::path p = c.output_path / o.artifact->file_name;
      fs::create_directories(p.parent_path());
      write_file(p, o.artifact->content.dump(2) + "\n");
    }
    records.push_back(std::move(o.record));
  }

  RunResult result;
  result.csv_path = c.output_path / kCsvName;
  result.summary_path = c.output_path / kSummaryName;
  write_file(result.csv_path, csv_text(c, records));
  result.summary = summarize(c, std::move(records));
  write_file(result.summary_path, result.summary.dump(2) + "\n");
  result.all_hard_passed = result.summary.at("all_hard_passed").get<bool>();
  return result;
}

VerifyResult verify_report(const fs::path& report_dir) {
  VerifyResult v;
  auto fail = [&](std::string detail, std::optional<std::size_t> trial = std::nullopt) {
    v.pass = false;
    v.detail = std::move(detail);
    v.differing_trial = trial;
    return v;
  };

  Json summary;
  try {
    summary = Json::parse(read_file(report_dir / kSummaryName));
  } catch (const Json::parse_error& ex) {
    return fail(std::string("summary.json is not valid JSON: ") + ex.what());
  }
  if (summary.value("schema_version", 0) != kSchemaVersion) return fail("unsupported summary schema_version");
  Json cfg = summary.at("config");
  cfg["output_path"] = report_dir.string();
  const ExperimentConfig c = config_from_json(cfg);
  const auto columns = experiment_columns(c);
  const auto records = parse_csv(read_file(report_dir / kCsvName), columns);

  std::vector<const TrialRecord*> by_index(c.trials, nullptr);
  for (const auto& r : records) {
    if (r.trial_index >= c.trials) return fail("CSV has out-of-range trial " + std::to_string(r.trial_index));
    if (by_index[r.trial_index]) return fail("CSV lists trial " + std::to_string(r.trial_index) + " twice");
    by_index[r.trial_index] = &r;
  }
  for (std::size_t i = 0; i < c.trials; ++i) {
    if (!by_index[i]) return fail("CSV is missing trial " + std::to_string(i), i);
    if (by_index[i]->seed != derive_seed(c.master_seed, i)) {
      return fail("trial " + std::to_string(i) + ": seed does not match the master seed", i);
    }
  }

  auto compare_rerun = [&](const std::vector<std::size_t>& indices) -> std::optional<std::size_t> {
    const auto fresh = run_trials(c, indices);
    for (std::size_t i = 0; i < indices.size(); ++i) {
      if (csv_row(fresh[i].record) != csv_row(*by_index[indices[i]])) return indices[i];
    }
    return std::nullopt;
  };

  // Deterministic 5% sample (at least one trial).
  const std::size_t sample_size = std::max<std::size_t>(1, (c.trials + 19) / 20);
  std::vector<std::size_t> pool = all_indices(c.trials);
  Rng rng(derive_seed(c.master_seed, 0x7665726966790000ULL));
  for (std::size_t i = 0; i < sample_size; ++i) std::swap(pool[i], pool[i + rng.below(c.trials - i)]);
  pool.resize(sample_size);
  std::ranges::sort(pool);
  if (auto bad = compare_rerun(pool)) {
    return fail("trial " + std::to_string(*bad) + ": recomputed record differs from the CSV row", bad);
  }

  const Json recomputed = summarize(c, records);
  if (const auto diff = first_difference(recomputed, summary); !diff.empty()) {
    if (auto bad = compare_rerun(all_indices(c.trials))) {
      return fail("trial " + std::to_string(*bad) + ": recomputed record differs from the CSV row", bad);
    }
    return fail("summary.json differs from the aggregate recomputed from the CSV at " + diff);
  }
  v.pass = true;
  v.detail = "re-ran " + std::to_string(sample_size) + " of " + std::to_string(c.trials) +
             " trials; aggregates match the CSV";
  return v;
}

}  // namespace dichroma::harness
