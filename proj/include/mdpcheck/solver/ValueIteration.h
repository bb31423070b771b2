#pragma once

#include <cstddef>
#include <vector>

#include "mdpcheck/graph/Quotient.h"
#include "mdpcheck/model/Objective.h"
#include "mdpcheck/model/SparseMdp.h"
#include "mdpcheck/model/ValueVector.h"
#include "mdpcheck/solver/ChoiceSystem.h"
#include "mdpcheck/solver/Environment.h"
#include "mdpcheck/solver/SolveResult.h"

namespace mdpcheck::solver {

/// Bellman operator on an unprocessed model. Target states are held at 1;
/// every other state gets opt_a [rew(s) +] sum_t P(s, a, t) values[t], where
/// target successors count as 1. Errors: DimensionMismatch.
template<typename ValueType>
model::ValueVector<ValueType> bellmanApply(model::SparseMdp const& mdp, model::ValueVector<ValueType> const& values, model::Objective const& objective);

struct IterationOutcome {
    std::vector<double> values;
    std::size_t iterations = 0;
};

/// Iterates the Bellman operator from `start` until successive iterates
/// satisfy `stop`. Errors: IterationLimit, Timeout.
IterationOutcome valueIterate(ChoiceSystem<double> const& system, std::vector<double> start, StoppingCriterion const& stop, Environment const& env);

struct OviOptions {
    /// Verification iterations per round, as a multiple of the convergence
    /// iterations so far.
    double verificationFactor = 1.0;
    /// Rounds of guess-and-verify before IterationLimit.
    std::size_t maxRounds = 40;
    std::size_t maxIterations = 100'000'000;
};

struct BoundedOutcome {
    std::vector<double> lower;
    std::vector<double> upper;
    std::size_t iterations = 0;
};

/// Optimistic value iteration: converge from below with relative eps/2,
/// guess upper = lower * (1 + eps), and verify that the guess is an
/// inductive upper bound (Bellman(upper) <= upper). A failed verification
/// halves the inner precision and resumes. Errors: IterationLimit, Timeout.
BoundedOutcome optimisticValueIterate(ChoiceSystem<double> const& system, double epsilon, OviOptions const& options, Environment const& env);

/// The `iterations`-th Bellman iterate from zero, computed with downward
/// rounding so that the result never exceeds the exact iterate.
std::vector<double> valueEstimates(ChoiceSystem<double> const& system, std::size_t iterations);

/// Naive value iteration on a preprocessed model; values over quotient
/// states, flagged unsound.
SolveResult solveVi(graph::Quotient const& quotient, StoppingCriterion const& stop, Environment const& env = {});

/// Optimistic value iteration on a preprocessed (contracting) model.
SolveResult solveOvi(graph::Quotient const& quotient, double epsilon, OviOptions const& options = {}, Environment const& env = {});

/// Iterate number `iterations` from zero (target 1) over quotient states.
model::ValueVector<double> viEstimates(graph::Quotient const& quotient, std::size_t iterations);

}  // namespace mdpcheck::solver
