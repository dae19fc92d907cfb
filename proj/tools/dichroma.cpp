// Command-line front end: one subcommand per library operation plus the
// experiment runner. Results go to stdout as JSON unless stated otherwise.

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "dichroma/bounds.hpp"
#include "dichroma/constructions.hpp"
#include "dichroma/erdos_posa.hpp"
#include "dichroma/harness.hpp"
#include "dichroma/io.hpp"
#include "dichroma/random_model.hpp"
#include "dichroma/rng.hpp"
#include "dichroma/serialize.hpp"
#include "dichroma/solver.hpp"

namespace {

using namespace dichroma;

constexpr int kExitFailure = 1;
constexpr int kExitInput = 2;

struct BudgetArgs {
  std::uint64_t nodes = SolverBudget{}.node_limit;
  double secs = SolverBudget{}.time_limit;

  void attach(CLI::App* cmd) {
    cmd->add_option("--budget-nodes", nodes, "Search node limit")->capture_default_str();
    cmd->add_option("--budget-secs", secs, "Wall-clock limit in seconds")->capture_default_str();
  }
  SolverBudget budget() const {
    SolverBudget b{nodes, secs};
    validate(b);
    return b;
  }
};

std::map<std::string, double> parse_params(const std::string& spec) {
  std::map<std::string, double> out;
  std::istringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InputError("parameter '" + item + "' is not of the form key=value");
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value.size()) throw InputError("parameter '" + key + "' has a non-numeric value");
    out[key] = x;
  }
  return out;
}

double need(const std::map<std::string, double>& params, const std::string& key) {
  const auto it = params.find(key);
  if (it == params.end()) throw InputError("missing parameter '" + key + "'");
  return it->second;
}

std::size_t need_count(const std::map<std::string, double>& params, const std::string& key) {
  const double x = need(params, key);
  if (x < 0 || x != static_cast<double>(static_cast<std::size_t>(x))) {
    throw InputError("parameter '" + key + "' must be a non-negative integer");
  }
  return static_cast<std::size_t>(x);
}

void print(const Json& j) { std::cout << j.dump(2) << "\n"; }

const char* status_of(Outcome o) { return o == Outcome::decided ? "ok" : "undecided"; }

int cmd_gen(std::size_t n, double p, std::uint64_t seed, const std::optional<double>& theorem1,
            const std::optional<std::size_t>& theorem2, const std::string& out, const std::string& format) {
  if (theorem1) p = p_theorem1(*theorem1, n);
  if (theorem2) p = p_theorem2(*theorem2, n);
  const Digraph d = sample({n, p, seed});
  auto emit = [&](std::ostream& os) { format == "dot" ? write_dot(os, d) : write_edge_list(os, d); };
  if (out.empty() || out == "-") {
    emit(std::cout);
  } else {
    std::ofstream f(out);
    if (!f) throw InputError("cannot write " + out);
    emit(f);
  }
  return 0;
}

int cmd_inspect(const std::string& input) {
  const Digraph d = load_edge_list(input);
  auto opt = [](const std::optional<std::size_t>& x) { return x ? Json(*x) : Json(nullptr); };
  print({{"n", d.order()},
         {"arcs", d.arc_count()},
         {"max_total_degree", max_total_degree(d)},
         {"digons", count_digons(d)},
         {"strong_components", strongly_connected_components(d).size()},
         {"acyclic", is_acyclic(d)},
         {"girth", opt(girth(d))},
         {"digirth", opt(digirth(d))},
         {"two_two_core_size", two_two_core(d).size()}});
  return 0;
}

int cmd_solve(const std::string& input, const std::string& what, const SolverBudget& budget) {
  const Digraph d = load_edge_list(input);
  Json out;
  if (what == "chi") {
    const auto r = chromatic_number_exact(d, budget);
    out = {{"status", status_of(r.outcome)},
           {"value", r.decided() ? Json(r.upper) : Json(nullptr)},
           {"lower", r.lower},
           {"upper", r.upper},
           {"witness", to_json(r.witness)},
           {"nodes", r.nodes}};
  } else if (what == "alpha") {
    const auto r = max_acyclic_set_exact(d, budget);
    out = {{"status", status_of(r.outcome)},
           {"value", r.decided() ? Json(r.lower) : Json(nullptr)},
           {"lower", r.lower},
           {"upper", r.upper},
           {"witness", r.witness},
           {"nodes", r.nodes}};
  } else if (what == "fvs") {
    const auto r = min_fvs_exact(d, budget);
    out = {{"status", status_of(r.outcome)},
           {"value", r.decided() ? Json(r.upper) : Json(nullptr)},
           {"lower", r.lower},
           {"upper", r.upper},
           {"witness", r.witness},
           {"nodes", r.nodes}};
  } else {
    const auto fast = two_colorable_fast(d);
    const auto r = k_colorable(d, 2, budget);
    out = {{"status", r.verdict == Verdict::undecided ? "undecided" : "ok"},
           {"value", r.verdict == Verdict::undecided ? Json(nullptr) : Json(r.verdict == Verdict::yes)},
           {"fast_path", fast == FastTwoColor::certified_yes ? "certified_yes" : "unknown"},
           {"witness", r.witness ? to_json(*r.witness) : Json(nullptr)},
           {"nodes", r.nodes}};
  }
  print(out);
  return out.at("status") == "ok" ? 0 : kExitFailure;
}

int cmd_bounds(const std::string& name, const std::string& params) {
  print(to_json(evaluate_bound(name, parse_params(params))));
  return 0;
}

void write_json(const std::string& path, const Json& j) {
  if (path.empty() || path == "-") {
    print(j);
    return;
  }
  std::ofstream f(path);
  if (!f) throw InputError("cannot write " + path);
  f << j.dump(2) << "\n";
}

int cmd_construct(int theorem, const std::string& params_spec, std::uint64_t seed, const std::string& out,
                  const SolverBudget& budget) {
  const auto params = parse_params(params_spec);
  if (theorem == 1) {
    PipelineOptions options;
    options.budget = budget;
    if (params.contains("exact_alpha_threshold")) {
      options.exact_alpha_threshold = need_count(params, "exact_alpha_threshold");
    }
    if (params.contains("cycle_cap")) options.cycle_cap = need_count(params, "cycle_cap");
    const auto cert = theorem1_pipeline(need_count(params, "delta"), need_count(params, "g"),
                                        need_count(params, "n"), seed, options);
    write_json(out, to_json(cert));
    if (!cert.completed()) {
      std::cerr << "pipeline failed at " << cert.failure_stage << ": " << cert.failure_detail << "\n";
      return kExitFailure;
    }
    return 0;
  }
  const std::size_t n = need_count(params, "n");
  const std::size_t k = need_count(params, "k");
  AuditOptions options;
  options.seed = derive_seed(seed, 1);
  options.budget = budget;
  if (params.contains("subset_budget")) options.subset_budget = need_count(params, "subset_budget");
  if (params.contains("exhaustive_threshold")) {
    options.exhaustive_threshold = need_count(params, "exhaustive_threshold");
  }
  const Digraph d = sample({n, p_theorem2(k, n), seed});
  const auto report = theorem2_audit(d, k, need(params, "eps"), options);
  Json j = to_json(report);
  j["sample_seed"] = seed;
  write_json(out, j);
  return report.soundness_violations == 0 && report.arcs_check_failures == 0 ? 0 : kExitFailure;
}

int cmd_verify_cert(const std::string& path, const SolverBudget& budget) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot read " + path);
  Json j;
  try {
    j = Json::parse(f);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
  const auto check = validate_certificate(certificate_from_json(j), budget);
  print({{"ok", check.ok}, {"problems", check.problems}});
  return check.ok ? 0 : kExitFailure;
}

int cmd_eposa(const std::string& input, std::size_t t, const SolverBudget& budget) {
  const Digraph d = load_edge_list(input);
  const auto dec = decompose(d, t, budget);
  Json j = to_json(dec);
  const bool verified = verify_decomposition(d, dec);
  j["verified"] = verified;
  print(j);
  return verified ? 0 : kExitFailure;
}

int cmd_shortcycle(const std::string& input, const SolverBudget& budget) {
  const Digraph d = load_edge_list(input);
  const auto w = short_cycle_witness(d, budget);
  print(to_json(w));
  return w.witness ? 0 : kExitFailure;
}

int cmd_experiment_run(const std::string& config_path) {
  const auto config = harness::load_config(config_path);
  const auto start = std::chrono::steady_clock::now();
  const auto result = harness::run_experiment(config);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  for (const auto& a : result.summary.at("assertions")) {
    std::cout << (a.at("passed").get<bool>() ? "PASS " : "FAIL ") << "[" << a.at("kind").get<std::string>() << "] "
              << a.at("name").get<std::string>() << ": " << a.at("detail").get<std::string>() << "\n";
  }
  std::cout << "wrote " << result.csv_path.string() << " and " << result.summary_path.string() << " in " << secs
            << " s\n";
  return result.all_hard_passed ? 0 : kExitFailure;
}

int cmd_experiment_verify(const std::string& report) {
  const auto v = harness::verify_report(report);
  std::cout << (v.pass ? "PASS: " : "FAIL: ") << v.detail << "\n";
  return v.pass ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dichromatic number laboratory: random digraphs, exact solvers, bounds and experiments"};
  app.require_subcommand(1);
  int rc = 0;

  std::size_t n = 1;
  double p = 0.0;
  std::uint64_t seed = 0;
  std::optional<double> theorem1;
  std::optional<std::size_t> theorem2;
  std::string out, format = "edges";
  auto* gen = app.add_subcommand("gen", "Sample D(n, p) and write it as an edge list");
  gen->add_option("--n", n, "Number of vertices")->required();
  auto* p_opt = gen->add_option("--p", p, "Per-direction arc probability (edge probability is 2p)");
  gen->add_option("--seed", seed, "Sampler seed")->required();
  auto* t1 = gen->add_option("--theorem1", theorem1, "Use p = DELTA / (4 e n)");
  auto* t2 = gen->add_option("--theorem2", theorem2, "Use p = K^2 / n");
  p_opt->excludes(t1)->excludes(t2);
  t1->excludes(t2);
  gen->add_option("--out", out, "Output file (default stdout)");
  gen->add_option("--format", format, "edges or dot")->check(CLI::IsMember({"edges", "dot"}));
  gen->callback([&] { rc = cmd_gen(n, p, seed, theorem1, theorem2, out, format); });

  std::string input;
  auto* inspect = app.add_subcommand("inspect", "Structural summary of an edge-list digraph");
  inspect->add_option("--input", input, "Edge-list file")->required();
  inspect->callback([&] { rc = cmd_inspect(input); });

  std::string what;
  BudgetArgs budget;
  auto* solve = app.add_subcommand("solve", "Exact chi, alpha, minimum FVS or 2-colorability");
  solve->add_option("--input", input, "Edge-list file")->required();
  solve->add_option("--what", what, "chi, alpha, fvs or 2col")
      ->required()
      ->check(CLI::IsMember({"chi", "alpha", "fvs", "2col"}));
  budget.attach(solve);
  solve->callback([&] { rc = cmd_solve(input, what, budget.budget()); });

  std::string name, params;
  auto* bounds = app.add_subcommand("bounds", "Evaluate an analytic bound");
  bounds->add_option("--name", name, "Bound name")->required();
  bounds->add_option("--params", params, "Comma-separated key=value list")->required();
  bounds->callback([&] { rc = cmd_bounds(name, params); });

  int theorem = 1;
  auto* construct = app.add_subcommand("construct", "Run the pruning pipeline (1) or the local coloring audit (2)");
  construct->add_option("--theorem", theorem, "1 or 2")->required()->check(CLI::IsMember({1, 2}));
  construct->add_option("--params", params, "key=value list; 1: delta,g,n; 2: n,k,eps")->required();
  construct->add_option("--seed", seed, "Sampler seed")->required();
  construct->add_option("--out", out, "Output JSON file (default stdout)");
  budget.attach(construct);
  construct->callback([&] { rc = cmd_construct(theorem, params, seed, out, budget.budget()); });

  std::string cert_path;
  auto* verify_cert = app.add_subcommand("verify-cert", "Independently re-check a construction certificate");
  verify_cert->add_option("cert", cert_path, "Certificate JSON")->required();
  budget.attach(verify_cert);
  verify_cert->callback([&] { rc = cmd_verify_cert(cert_path, budget.budget()); });

  std::size_t t = 1;
  auto* eposa = app.add_subcommand("eposa", "t disjoint dicycles or a feedback vertex set");
  eposa->add_option("--input", input, "Edge-list file")->required();
  eposa->add_option("--t", t, "Number of cycles requested")->required()->check(CLI::PositiveNumber);
  budget.attach(eposa);
  eposa->callback([&] { rc = cmd_eposa(input, t, budget.budget()); });

  auto* shortcycle = app.add_subcommand("shortcycle", "Short dicycle witness for a 3-chromatic digraph");
  shortcycle->add_option("--input", input, "Edge-list file")->required();
  budget.attach(shortcycle);
  shortcycle->callback([&] { rc = cmd_shortcycle(input, budget.budget()); });

  std::string config_path, report;
  auto* experiment = app.add_subcommand("experiment", "Monte Carlo experiments");
  experiment->require_subcommand(1);
  auto* run = experiment->add_subcommand("run", "Run an experiment config");
  run->add_option("--config", config_path, "Config JSON")->required();
  run->callback([&] { rc = cmd_experiment_run(config_path); });
  auto* verify = experiment->add_subcommand("verify", "Re-check a report directory");
  verify->add_option("--report", report, "Report directory")->required();
  verify->callback([&] { rc = cmd_experiment_verify(report); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return rc;
}
