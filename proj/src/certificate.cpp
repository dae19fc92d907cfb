#include <algorithm>
#include <cmath>
#include <string>

#include "dichroma/bounds.hpp"
#include "dichroma/constructions.hpp"
#include "dichroma/random_model.hpp"

namespace dichroma {

CertificateCheck validate_certificate(const ConstructionCertificate& cert,
                                      const SolverBudget& budget) {
  CertificateCheck check;
  auto fail = [&](std::string what) {
    check.ok = false;
    check.problems.push_back(std::move(what));
  };

  if (!cert.completed()) {
    fail("pipeline failed at stage '" + cert.failure_stage + "': " + cert.failure_detail);
    return check;
  }

  double p = 0.0;
  try {
    p = p_theorem1(static_cast<double>(cert.delta), cert.n);
  } catch (const InputError& e) {
    fail(std::string("parameters invalid: ") + e.what());
    return check;
  }
  if (p != cert.p) fail("p does not equal Delta/(4en)");

  for (const VertexSet* s : {&cert.removed_for_degree, &cert.removed_for_cycles}) {
    if (!std::ranges::is_sorted(*s) || std::ranges::adjacent_find(*s) != s->end()) {
      fail("removed set is not sorted and duplicate-free");
      return check;
    }
    if (!s->empty() && s->back() >= cert.n) {
      fail("removed vertex out of range");
      return check;
    }
  }
  VertexSet removed;
  std::ranges::set_union(cert.removed_for_degree, cert.removed_for_cycles, std::back_inserter(removed));
  if (removed.size() != cert.total_removed()) fail("removed sets are not disjoint");

  const Digraph d = sample({cert.n, p, cert.seed});
  const auto expected = remove_vertices(d, removed);
  if (!(expected.graph == cert.surviving)) fail("stored D* differs from the re-sampled D minus removed vertices");
  if (cert.surviving_n != cert.surviving.order() || cert.surviving_n + removed.size() != cert.n) {
    fail("surviving_n inconsistent");
  }

  const std::size_t ex = excess_degree(d, cert.delta);
  if (ex != cert.excess_degree) fail("ex(D) mismatch");
  if (cert.removed_for_degree.size() > ex) fail("more vertices removed for degree than ex(D)");

  const auto g = girth(cert.surviving);
  const std::size_t maxdeg = max_total_degree(cert.surviving);
  const bool girth_ok = !g || *g >= cert.g;
  const bool maxdeg_ok = maxdeg <= cert.delta;
  if (g != cert.girth) fail("girth(D*) mismatch");
  if (maxdeg != cert.max_degree) fail("Delta(D*) mismatch");
  if (girth_ok != cert.verified_girth_ok || !girth_ok) fail("girth check failed");
  if (maxdeg_ok != cert.verified_maxdeg_ok || !maxdeg_ok) fail("max degree check failed");

  switch (cert.alpha_provenance) {
    case AlphaProvenance::exact: {
      if (cert.alpha_witness.size() != cert.alpha_upper_used ||
          !is_acyclic_induced(cert.surviving, cert.alpha_witness)) {
        fail("alpha witness is not an acyclic set of the stated size");
      }
      const auto alpha = max_acyclic_set_exact(cert.surviving, budget);
      if (!alpha.decided()) {
        fail("could not re-derive alpha(D*) within budget");
      } else if (static_cast<double>(alpha.upper) != cert.alpha_upper_used) {
        fail("alpha(D*) mismatch");
      }
      break;
    }
    case AlphaProvenance::claim3_bound:
      if (cert.delta < 2 || claim3_mas_bound(static_cast<double>(cert.n), static_cast<double>(cert.delta)) !=
                                cert.alpha_upper_used) {
        fail("alpha bound does not equal 4en ln(Delta)/Delta");
      }
      break;
    case AlphaProvenance::trivial:
      if (cert.alpha_upper_used != static_cast<double>(cert.surviving_n)) fail("trivial alpha bound must equal n*");
      break;
  }

  std::size_t chi = 0;
  if (cert.surviving_n > 0 && cert.alpha_upper_used > 0.0) {
    chi = static_cast<std::size_t>(std::ceil(static_cast<double>(cert.surviving_n) / cert.alpha_upper_used));
  }
  if (chi != cert.chi_lower) fail("chi_lower is not ceil(n*/alpha)");
  if (cert.chi_lower_heuristic != (cert.alpha_provenance != AlphaProvenance::exact)) {
    fail("heuristic flag inconsistent with alpha provenance");
  }
  return check;
}

}  // namespace dichroma
