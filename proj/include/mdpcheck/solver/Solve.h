#pragma once

#include <optional>
#include <string>

#include "mdpcheck/graph/Quotient.h"
#include "mdpcheck/model/Objective.h"
#include "mdpcheck/model/Policy.h"
#include "mdpcheck/model/SparseMdp.h"
#include "mdpcheck/solver/Environment.h"
#include "mdpcheck/solver/LinearProgramming.h"
#include "mdpcheck/solver/PolicyIteration.h"
#include "mdpcheck/solver/SolveResult.h"
#include "mdpcheck/solver/ValueIteration.h"

namespace mdpcheck::solver {

enum class Algorithm { ValueIteration, OptimisticValueIteration, PolicyIteration, LinearProgramming };

std::string_view toString(Algorithm algorithm);

struct SolverConfig {
    Algorithm algorithm = Algorithm::ValueIteration;
    /// Solve SCCs one by one, successors first.
    bool topological = false;

    /// VI stopping criterion; OVI uses its epsilon (always relative).
    StoppingCriterion stop{};
    OviOptions ovi{};

    Evaluator evaluator = Evaluator::exact();
    PiOptions pi{};
    /// Initial PI policy over the original states.
    std::optional<model::Policy> initialPolicy;

    /// Warm start: VI estimates become the initial PI policy or LP lower
    /// bounds.
    bool warmStart = false;
    std::size_t warmStartIterations = 100;

    LpField lpField = LpField::Rational;
    LpObjectiveMode lpObjective = LpObjectiveMode::AllStates;
    bool lpUniqueActionEquality = false;
    SimplexOptions simplex{};

    /// Wall-clock limit in seconds for the numerical phase.
    std::optional<double> timeoutSeconds;
};

/// Parses "<algorithm>[:key=value,...]", e.g. "vi:eps=1e-6",
/// "pi:evaluator=iterative,eps=1e-6", "lp:field=float,bounds=warm,objective=init,eq=1",
/// "ovi:eps=1e-6,topo=1". Errors: BadParameter.
SolverConfig parseSolverConfig(std::string const& spec);

/// Canonical "key=value,..." rendering of the options that differ from
/// their defaults for the configured algorithm ("default" if none).
std::string describeConfig(SolverConfig const& config);

/// Maps a result over quotient states back to the original states. States
/// removed as infinite get infinite values; the policy is completed inside
/// collapsed end components and qualitative regions.
SolveResult liftResult(model::SparseMdp const& mdp, graph::Quotient const& quotient, SolveResult const& quotientResult);

/// Initial policy over quotient states that follows `policy` wherever the
/// chosen action survived preprocessing.
model::Policy projectPolicy(graph::Quotient const& quotient, model::Policy const& policy);

/// Runs the configured backend on a preprocessed model, monolithically or
/// topologically. Values are over quotient states.
SolveResult solvePreprocessed(graph::Quotient const& quotient, SolverConfig const& config, Environment const& env = {});

/// Full pipeline: qualitative analysis, MEC collapsing, numerical solve, and
/// mapping back. Values are over the original states.
SolveResult solve(model::SparseMdp const& mdp, model::Objective const& objective, SolverConfig const& config);

}  // namespace mdpcheck::solver
