#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "dichroma/bounds.hpp"
#include "dichroma/constructions.hpp"
#include "dichroma/erdos_posa.hpp"
#include "dichroma/harness.hpp"
#include "dichroma/io.hpp"
#include "dichroma/random_model.hpp"
#include "dichroma/serialize.hpp"
#include "dichroma/solver.hpp"

namespace py = pybind11;
using namespace dichroma;

namespace {

SolverBudget budget_from(std::uint64_t node_limit, double time_limit) {
  SolverBudget b{node_limit, time_limit};
  validate(b);
  return b;
}

const char* status_of(Outcome o) { return o == Outcome::decided ? "decided" : "undecided"; }

// Complex results cross the boundary as JSON text; the Python package decodes them.
std::string dump(const Json& j) { return j.dump(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Native core of the dichroma digraph coloring laboratory.";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<Json::exception>(m, "JsonError", PyExc_ValueError);

  py::class_<Digraph>(m, "Digraph")
      .def(py::init<std::size_t>(), py::arg("n"))
      .def(py::init<std::size_t, std::vector<Arc>>(), py::arg("n"), py::arg("arcs"))
      .def_property_readonly("order", &Digraph::order)
      .def_property_readonly("arc_count", &Digraph::arc_count)
      .def_property_readonly("arcs", &Digraph::arcs)
      .def("has_arc", &Digraph::has_arc, py::arg("u"), py::arg("v"))
      .def("__eq__", [](const Digraph& a, const Digraph& b) { return a == b; })
      .def("__repr__", [](const Digraph& d) {
        return "Digraph(n=" + std::to_string(d.order()) + ", arcs=" + std::to_string(d.arc_count()) + ")";
      })
      .def("to_edge_list", [](const Digraph& d) {
        std::ostringstream out;
        write_edge_list(out, d);
        return out.str();
      })
      .def("to_dot", [](const Digraph& d) {
        std::ostringstream out;
        write_dot(out, d);
        return out.str();
      })
      .def_static(
          "from_edge_list",
          [](const std::string& text) {
            std::istringstream in(text);
            return read_edge_list(in);
          },
          py::arg("text"));

  m.def("girth", &girth, py::arg("d"));
  m.def("digirth", &digirth, py::arg("d"));
  m.def("is_acyclic", &is_acyclic, py::arg("d"));
  m.def(
      "is_acyclic_induced", [](const Digraph& d, const VertexSet& s) { return is_acyclic_induced(d, s); },
      py::arg("d"), py::arg("vertices"));

  m.def(
      "sample", [](std::size_t n, double p, std::uint64_t seed) { return sample({n, p, seed}); }, py::arg("n"),
      py::arg("p"), py::arg("seed"));
  m.def("p_theorem1", &p_theorem1, py::arg("delta"), py::arg("n"));
  m.def("p_theorem2", &p_theorem2, py::arg("k"), py::arg("n"));

  m.def(
      "chromatic_number",
      [](const Digraph& d, std::uint64_t node_limit, double time_limit) {
        const auto r = chromatic_number_exact(d, budget_from(node_limit, time_limit));
        py::dict out;
        out["status"] = status_of(r.outcome);
        out["lower"] = r.lower;
        out["upper"] = r.upper;
        out["colors"] = r.witness.colors;
        out["nodes"] = r.nodes;
        return out;
      },
      py::arg("d"), py::arg("node_limit") = SolverBudget{}.node_limit, py::arg("time_limit") = SolverBudget{}.time_limit);
  m.def(
      "max_acyclic_set",
      [](const Digraph& d, std::uint64_t node_limit, double time_limit) {
        const auto r = max_acyclic_set_exact(d, budget_from(node_limit, time_limit));
        py::dict out;
        out["status"] = status_of(r.outcome);
        out["lower"] = r.lower;
        out["upper"] = r.upper;
        out["witness"] = r.witness;
        out["nodes"] = r.nodes;
        return out;
      },
      py::arg("d"), py::arg("node_limit") = SolverBudget{}.node_limit, py::arg("time_limit") = SolverBudget{}.time_limit);
  m.def(
      "min_fvs",
      [](const Digraph& d, std::uint64_t node_limit, double time_limit) {
        const auto r = min_fvs_exact(d, budget_from(node_limit, time_limit));
        py::dict out;
        out["status"] = status_of(r.outcome);
        out["lower"] = r.lower;
        out["upper"] = r.upper;
        out["witness"] = r.witness;
        out["nodes"] = r.nodes;
        return out;
      },
      py::arg("d"), py::arg("node_limit") = SolverBudget{}.node_limit, py::arg("time_limit") = SolverBudget{}.time_limit);
  m.def(
      "two_colorable_fast", [](const Digraph& d) { return two_colorable_fast(d) == FastTwoColor::certified_yes; },
      py::arg("d"));

  m.def(
      "evaluate_bound_json",
      [](const std::string& name, const std::map<std::string, double>& params) {
        return dump(to_json(evaluate_bound(name, params)));
      },
      py::arg("name"), py::arg("params"));

  m.def(
      "theorem1_pipeline_json",
      [](std::size_t delta, std::size_t g, std::size_t n, std::uint64_t seed, std::size_t exact_alpha_threshold) {
        PipelineOptions options;
        options.exact_alpha_threshold = exact_alpha_threshold;
        return dump(to_json(theorem1_pipeline(delta, g, n, seed, options)));
      },
      py::arg("delta"), py::arg("g"), py::arg("n"), py::arg("seed"),
      py::arg("exact_alpha_threshold") = PipelineOptions{}.exact_alpha_threshold);
  m.def(
      "validate_certificate_json",
      [](const std::string& text) {
        const auto check = validate_certificate(certificate_from_json(Json::parse(text)));
        return py::make_tuple(check.ok, check.problems);
      },
      py::arg("certificate"));
  m.def(
      "theorem2_audit_json",
      [](const Digraph& d, std::size_t k, double eps, std::size_t subset_budget, std::uint64_t seed) {
        AuditOptions options;
        options.subset_budget = subset_budget;
        options.seed = seed;
        return dump(to_json(theorem2_audit(d, k, eps, options)));
      },
      py::arg("d"), py::arg("k"), py::arg("eps"), py::arg("subset_budget") = AuditOptions{}.subset_budget,
      py::arg("seed") = 0);

  m.def(
      "decompose_json", [](const Digraph& d, std::size_t t) { return dump(to_json(decompose(d, t))); }, py::arg("d"),
      py::arg("t"));
  m.def(
      "short_cycle_witness_json", [](const Digraph& d) { return dump(to_json(short_cycle_witness(d))); },
      py::arg("d"));

  m.def(
      "run_experiment_json",
      [](const std::string& config) {
        const auto c = harness::config_from_json(Json::parse(config));
        py::gil_scoped_release release;
        return dump(harness::run_experiment(c).summary);
      },
      py::arg("config"));
  m.def(
      "verify_report",
      [](const std::filesystem::path& dir) {
        const auto v = harness::verify_report(dir);
        return py::make_tuple(v.pass, v.detail, v.differing_trial);
      },
      py::arg("report_dir"));
}
