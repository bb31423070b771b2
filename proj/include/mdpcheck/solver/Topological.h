#pragma once

#include <optional>
#include <vector>

#include "mdpcheck/graph/Quotient.h"
#include "mdpcheck/model/Policy.h"
#include "mdpcheck/solver/Solve.h"

namespace mdpcheck::solver {

/// Solves the SCCs of the maybe states successors-first with the configured
/// backend. Exits are folded into constants; singleton SCCs without a self
/// loop are solved by one backup. Approximate backends get the full epsilon
/// per SCC, so OVI's certificate flag reports the composed width. `initial`
/// (PI) is over quotient states; `warmLower` (LP) over maybe states.
SolveResult solveTopological(graph::Quotient const& quotient, SolverConfig const& config, Environment const& env = {},
                             std::optional<model::Policy> const& initial = std::nullopt, std::optional<std::vector<Rational>> const& warmLower = std::nullopt);

}  // namespace mdpcheck::solver
