#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mdpcheck/Rational.h"
#include "mdpcheck/graph/Quotient.h"
#include "mdpcheck/solver/ChoiceSystem.h"
#include "mdpcheck/solver/Environment.h"
#include "mdpcheck/solver/SolveResult.h"

namespace mdpcheck::solver {

enum class Relation { GreaterEqual, LessEqual, Equal };
enum class LpSense { Minimize, Maximize };

template<typename ValueType>
struct LpConstraint {
    std::vector<std::pair<std::size_t, ValueType>> coefficients;
    Relation relation = Relation::GreaterEqual;
    ValueType rhs{0};
};

/// Linear program with native variable bounds lower <= x <= upper.
template<typename ValueType>
struct LpProblem {
    std::size_t numVariables = 0;
    std::vector<ValueType> lower;
    /// nullopt means +infinity.
    std::vector<std::optional<ValueType>> upper;
    std::vector<LpConstraint<ValueType>> constraints;
    LpSense sense = LpSense::Minimize;
    std::vector<ValueType> objective;

    /// Throws BadParameter on inconsistent bounds or undeclared variables.
    void validate() const;
};

enum class LpField { Rational, Float };
enum class LpObjectiveMode { AllStates, InitialOnly };

struct LpOptions {
    LpObjectiveMode objective = LpObjectiveMode::AllStates;
    /// Adds the reverse inequality for every state with a single action.
    bool uniqueActionEquality = false;
    /// Warm bounds: lower bounds per maybe state, each at most the value.
    std::optional<std::vector<Rational>> warmLowerBounds;
};

/// Encodes a fixpoint system: one variable per state; per choice
/// x_s >= constant + sum P x (max, minimising the objective) or <= (min,
/// maximising). Bounds are [0, 1] for reachability and [0, inf) for rewards,
/// raised to the warm lower bounds when given. `objectiveStates` selects the
/// objective terms for LpObjectiveMode::InitialOnly.
template<typename ValueType>
LpProblem<ValueType> buildLp(ChoiceSystem<ValueType> const& system, LpOptions const& options, std::vector<std::size_t> const& objectiveStates = {},
                             std::optional<std::vector<ValueType>> const& warmLower = std::nullopt);

/// Encoding of a preprocessed model over its maybe states.
/// Errors: InfiniteValueState if the model still has infinite values.
LpProblem<Rational> buildLp(graph::Quotient const& quotient, LpOptions const& options);

LpProblem<double> toFloat(LpProblem<Rational> const& lp);

/// Human-readable text export, one constraint per line.
std::string toLpFormat(LpProblem<Rational> const& lp);

struct SimplexOptions {
    double feasibilityTolerance = 1e-9;
    double pivotTolerance = 1e-9;
    double optimalityTolerance = 1e-9;
    std::size_t maxIterations = 10'000'000;
};

template<typename ValueType>
struct LpSolution {
    std::vector<ValueType> values;
    ValueType objectiveValue{0};
    std::size_t iterations = 0;
    bool phaseOne = false;
};

/// Two-phase bounded-variable primal simplex with Bland's smallest-index
/// rule for entering and leaving variables. The rational instantiation is
/// exact; the double one compares with the tolerances in `options`.
/// Errors: Infeasible, Unbounded, IterationLimit, Timeout.
template<typename ValueType>
LpSolution<ValueType> simplexSolve(LpProblem<ValueType> const& lp, SimplexOptions const& options = {}, Environment const& env = {});

/// build_lp + simplex + value extraction, over quotient states. With
/// LpObjectiveMode::InitialOnly only the initial state's value is
/// meaningful.
SolveResult solveLp(graph::Quotient const& quotient, LpOptions const& options, LpField field, SimplexOptions const& simplex = {}, Environment const& env = {});

}  // namespace mdpcheck::solver
