#include "dichroma/serialize.hpp"

namespace dichroma {

namespace {

Json optional_size(const std::optional<std::size_t>& v) {
  return v ? Json(*v) : Json(nullptr);
}

AlphaProvenance provenance_from(const std::string& s) {
  if (s == "exact") return AlphaProvenance::exact;
  if (s == "claim3_bound") return AlphaProvenance::claim3_bound;
  if (s == "trivial") return AlphaProvenance::trivial;
  throw InputError("unknown alpha provenance '" + s + "'");
}

}  // namespace

Json to_json(const Digraph& d) {
  Json arcs = Json::array();
  for (const auto& [u, v] : d.arcs()) arcs.push_back({u, v});
  return {{"n", d.order()}, {"arcs", std::move(arcs)}};
}

Digraph digraph_from_json(const Json& j) {
  try {
    std::vector<Arc> arcs;
    for (const auto& a : j.at("arcs")) arcs.emplace_back(a.at(0).get<Vertex>(), a.at(1).get<Vertex>());
    return Digraph(j.at("n").get<std::size_t>(), std::move(arcs));
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed digraph JSON: ") + e.what());
  }
}

Json to_json(const CycleWitness& c) {
  return {{"vertices", c.vertices}, {"directed", c.directed}, {"length", c.length()}};
}

Json to_json(const ColoringAssignment& c) { return {{"k", c.k}, {"colors", c.colors}}; }

Json to_json(const BoundReport& r) {
  Json j = {{"name", r.name}, {"inputs", r.inputs}, {"theoretical", r.theoretical}};
  if (!r.auxiliary.empty()) j["auxiliary"] = r.auxiliary;
  if (r.empirical_mean) {
    j["empirical_mean"] = *r.empirical_mean;
    j["empirical_stderr"] = *r.empirical_stderr;
    j["trials"] = *r.trials;
  }
  return j;
}

Json to_json(const AuditReport& r) {
  return {
      {"n", r.n},
      {"k", r.k},
      {"eps", r.eps},
      {"seed", r.seed},
      {"eps_regime_limit", r.eps_regime_limit},
      {"eps_within_regime", r.eps < r.eps_regime_limit},
      {"status", to_string(r.status)},
      {"core_size", r.core_size()},
      {"core_vertices", r.core_vertices},
      {"size_limit", r.size_limit},
      {"exhaustive_size_limit", r.exhaustive_size_limit},
      {"subsets_checked", r.subsets_checked()},
      {"exhaustive_checked", r.exhaustive_checked},
      {"random_checked", r.random_checked},
      {"fast_certified", r.fast_certified},
      {"exact_checked", r.exact_checked},
      {"soundness_violations", r.soundness_violations},
      {"three_chromatic_found", r.three_chromatic_found},
      {"critical_subsets", r.critical_subsets},
      {"arcs_check_failures", r.arcs_check_failures},
      {"counterexample", r.counterexample ? Json(*r.counterexample) : Json(nullptr)},
      {"inconclusive", r.inconclusive},
  };
}

Json to_json(const Decomposition& d) {
  Json cycles = Json::array();
  for (const auto& c : d.cycles) cycles.push_back(to_json(c));
  return {{"kind", to_string(d.kind)},   {"t_requested", d.t_requested},
          {"cycles", std::move(cycles)}, {"fvs", d.fvs},
          {"fvs_size", d.fvs.size()},    {"packing_excluded", d.packing_excluded},
          {"fvs_minimum", d.fvs_minimum}};
}

Json to_json(const ShortCycleOutcome& w) {
  if (!w.witness) return {{"status", "undecided"}};
  const auto& s = *w.witness;
  return {{"status", "ok"},
          {"cycle", to_json(s.cycle)},
          {"branch", to_string(s.branch)},
          {"packing_size", s.packing_size},
          {"fvs", s.fvs},
          {"length_bound", s.length_bound}};
}

Json to_json(const ConstructionCertificate& c) {
  return {
      {"params", {{"n", c.n}, {"delta", c.delta}, {"g", c.g}, {"seed", c.seed}, {"p", c.p}}},
      {"excess_degree", c.excess_degree},
      {"removed_for_degree", c.removed_for_degree},
      {"removed_for_cycles", c.removed_for_cycles},
      {"short_cycles_found", c.short_cycles_found},
      {"total_removed", c.total_removed()},
      {"within_n_over_100", c.within_n_over_100()},
      {"surviving_n", c.surviving_n},
      {"surviving", to_json(c.surviving)},
      {"girth", optional_size(c.girth)},
      {"max_degree", c.max_degree},
      {"verified_girth_ok", c.verified_girth_ok},
      {"verified_maxdeg_ok", c.verified_maxdeg_ok},
      {"alpha_upper_used", c.alpha_upper_used},
      {"alpha_provenance", to_string(c.alpha_provenance)},
      {"alpha_witness", c.alpha_witness},
      {"chi_lower", c.chi_lower},
      {"chi_lower_heuristic", c.chi_lower_heuristic},
      {"failure_stage", c.failure_stage},
      {"failure_detail", c.failure_detail},
  };
}

ConstructionCertificate certificate_from_json(const Json& j) {
  try {
    ConstructionCertificate c;
    const auto& p = j.at("params");
    c.n = p.at("n").get<std::size_t>();
    c.delta = p.at("delta").get<std::size_t>();
    c.g = p.at("g").get<std::size_t>();
    c.seed = p.at("seed").get<std::uint64_t>();
    c.p = p.at("p").get<double>();
    c.excess_degree = j.at("excess_degree").get<std::size_t>();
    c.removed_for_degree = j.at("removed_for_degree").get<VertexSet>();
    c.removed_for_cycles = j.at("removed_for_cycles").get<VertexSet>();
    c.short_cycles_found = j.at("short_cycles_found").get<std::size_t>();
    c.surviving_n = j.at("surviving_n").get<std::size_t>();
    c.surviving = digraph_from_json(j.at("surviving"));
    if (!j.at("girth").is_null()) c.girth = j.at("girth").get<std::size_t>();
    c.max_degree = j.at("max_degree").get<std::size_t>();
    c.verified_girth_ok = j.at("verified_girth_ok").get<bool>();
    c.verified_maxdeg_ok = j.at("verified_maxdeg_ok").get<bool>();
    c.alpha_upper_used = j.at("alpha_upper_used").get<double>();
    c.alpha_provenance = provenance_from(j.at("alpha_provenance").get<std::string>());
    c.alpha_witness = j.at("alpha_witness").get<VertexSet>();
    c.chi_lower = j.at("chi_lower").get<std::size_t>();
    c.chi_lower_heuristic = j.at("chi_lower_heuristic").get<bool>();
    c.failure_stage = j.at("failure_stage").get<std::string>();
    c.failure_detail = j.at("failure_detail").get<std::string>();
    return c;
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed certificate JSON: ") + e.what());
  }
}

}  // namespace dichroma
