#pragma once

#include <iosfwd>
#include <vector>

#include "brush/report.hpp"

namespace brush::accept {

using report::CriterionResult;

CriterionResult model_endpoints();        // endpoint potentials + trichotomy
CriterionResult semiconjugacy();          // commutation, ratios, injectivity
CriterionResult rays_and_pinching();      // real ray, landings, functoriality
CriterionResult orbifold_bounds();        // BP value, inequalities, slope
CriterionResult expansion();              // uniform expansion certificate
CriterionResult poincare();               // coefficients, orders, growth
CriterionResult disconnectedness();       // disjoint-type cert + labels
CriterionResult determinism();            // render byte stability

// Runs every criterion, printing one pass/fail line each to `out`.
std::vector<CriterionResult> run_all(std::ostream& out);

}  // namespace brush::accept
