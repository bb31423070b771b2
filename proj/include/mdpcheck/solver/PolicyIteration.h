#pragma once

#include <optional>
#include <vector>

#include "mdpcheck/graph/Quotient.h"
#include "mdpcheck/model/Objective.h"
#include "mdpcheck/model/Policy.h"
#include "mdpcheck/solver/ChoiceSystem.h"
#include "mdpcheck/solver/Environment.h"
#include "mdpcheck/solver/SolveResult.h"

namespace mdpcheck::solver {

enum class EvaluatorKind { ExactElimination, FloatElimination, Iterative };

/// How policy iteration solves the Markov chain of the current policy.
struct Evaluator {
    EvaluatorKind kind = EvaluatorKind::ExactElimination;
    /// Used by the iterative evaluator only.
    StoppingCriterion stop{};

    static Evaluator exact() {
        return {EvaluatorKind::ExactElimination, {}};
    }
    static Evaluator floatElimination() {
        return {EvaluatorKind::FloatElimination, {}};
    }
    static Evaluator iterative(StoppingCriterion stop) {
        return {EvaluatorKind::Iterative, stop};
    }
};

struct PiOptions {
    /// Minimum improvement of a backed-up value before a floating-point PI
    /// switches actions. The iterative evaluator only delivers values up to
    /// its epsilon, so for it the effective tolerance is max(this, epsilon).
    double improvementTolerance = 1e-8;
    std::size_t maxIterations = 100'000;
    /// Keep every evaluated value vector in PiOutcome::trace.
    bool recordTrace = false;
};

template<typename ValueType>
struct PiOutcome {
    std::vector<ValueType> values;
    /// Local action per system state.
    std::vector<std::size_t> policy;
    std::size_t iterations = 0;
    std::size_t totalSwitches = 0;
    std::vector<std::vector<ValueType>> trace;
};

/// Solves x = b_pi + P_pi x exactly by Gaussian elimination in ascending
/// state order. Errors: SingularSystem.
std::vector<Rational> solveExact(ChoiceSystem<Rational> const& system, std::vector<std::size_t> const& policy, Environment const& env = {});

/// Sparse LU factorisation in double precision. Errors: SingularSystem.
std::vector<double> solveFloat(ChoiceSystem<double> const& system, std::vector<std::size_t> const& policy);

/// Iterates the policy's chain from zero until `stop` holds.
std::vector<double> solveIterative(ChoiceSystem<double> const& system, std::vector<std::size_t> const& policy, StoppingCriterion const& stop, Environment const& env = {});

/// Replaces the choice of every state that cannot leave the system under
/// `policy` by an attractor choice, so that the induced chain is absorbing.
/// A no-op on contracting systems.
template<typename ValueType>
void makeProper(ChoiceSystem<ValueType> const& system, std::vector<std::size_t>& policy);

PiOutcome<Rational> policyIterateExact(ChoiceSystem<Rational> const& system, std::vector<std::size_t> initial, PiOptions const& options, Environment const& env);
PiOutcome<double> policyIterateFloat(ChoiceSystem<double> const& system, Evaluator const& evaluator, std::vector<std::size_t> initial, PiOptions const& options,
                                     Environment const& env);

/// Policy iteration on a preprocessed model. `initial` is over quotient
/// states (lowest-index actions if absent). With the exact evaluator the
/// result is exact and carries an optimal policy; otherwise it is unsound.
SolveResult solvePi(graph::Quotient const& quotient, Evaluator const& evaluator, std::optional<model::Policy> const& initial = std::nullopt,
                    PiOptions const& options = {}, Environment const& env = {});

/// Greedy policy after one Bellman backup of `estimates` (quotient states),
/// ties to the lowest action index.
model::Policy warmStartPolicy(graph::Quotient const& quotient, model::ValueVector<double> const& estimates);

/// Values of an induced chain over its own states. The chain is
/// preprocessed first, so states with value 0, 1, or infinity are settled by
/// graph analysis and the remaining system is nonsingular.
SolveResult evaluatePolicy(model::InducedMc const& mc, model::Objective const& objective, Evaluator const& evaluator, Environment const& env = {});

}  // namespace mdpcheck::solver
