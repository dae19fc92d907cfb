#pragma once

#include "json.hpp"

#include "dichroma/bounds.hpp"
#include "dichroma/constructions.hpp"
#include "dichroma/digraph.hpp"
#include "dichroma/erdos_posa.hpp"
#include "dichroma/solver.hpp"

namespace dichroma {

using Json = nlohmann::json;

/// {"n": n, "arcs": [[u, v], ...]}
Json to_json(const Digraph& d);
Digraph digraph_from_json(const Json& j);

Json to_json(const CycleWitness& c);
Json to_json(const ColoringAssignment& c);
Json to_json(const BoundReport& r);
Json to_json(const AuditReport& r);
Json to_json(const Decomposition& d);
Json to_json(const ShortCycleOutcome& w);

Json to_json(const ConstructionCertificate& c);
ConstructionCertificate certificate_from_json(const Json& j);

}  // namespace dichroma
