#include <gtest/gtest.h>

#include <limits>
#include <random>

#include "mdpcheck/gen/Generators.h"
#include "mdpcheck/graph/Quotient.h"
#include "mdpcheck/solver/ChoiceSystem.h"
#include "mdpcheck/solver/PolicyIteration.h"
#include "mdpcheck/solver/Solve.h"
#include "mdpcheck/solver/ValueIteration.h"
#include "oracle/Oracle.h"
#include "support/Expect.h"
#include "support/Fixtures.h"

using namespace mdpcheck;
using model::OptimizationDirection;

namespace {

Rational q(std::string const& text) {
    return parseRational(text);
}

model::Objective maxGoal(model::SparseMdp const& mdp) {
    return model::Objective::reachability(mdp, "goal", OptimizationDirection::Maximize);
}

template<typename ValueType>
std::vector<ValueType> maybePart(model::ValueVector<ValueType> const& values, graph::Quotient const& quotient) {
    auto const& all = values.values();
    return {all.begin(), all.begin() + static_cast<std::ptrdiff_t>(quotient.numberOfMaybeStates())};
}

}  // namespace

TEST(BellmanApply, ExactValuesAreAFixpoint) {
    auto mdp = gen::genPiTrap(q("1/10"));
    model::ValueVector<Rational> exact(std::vector<Rational>{q("1/2"), q("1/10"), q("1/2"), Rational(0), Rational(1)});
    EXPECT_EQ(solver::bellmanApply(mdp, exact, maxGoal(mdp)), exact);
}

TEST(BellmanApply, OneStepFromZeroOnTrapModel) {
    auto mdp = gen::genPiTrap(q("1/10"));
    auto next = solver::bellmanApply(mdp, model::ValueVector<Rational>(5), maxGoal(mdp));
    EXPECT_EQ(next[0], Rational(0));
    EXPECT_EQ(next[1], q("1/10"));
    EXPECT_EQ(next[2], q("1/20"));
    EXPECT_EQ(next[3], Rational(0));
    EXPECT_EQ(next[4], Rational(1));
}

TEST(BellmanApply, AddsStateRewards) {
    model::RawMdp raw;
    raw.numStates = 2;
    raw.choices = {{{{0, q("1/2")}, {1, q("1/2")}}, {{1, Rational(1)}}}, {{{1, Rational(1)}}}};
    raw.rewards = std::vector<Rational>{Rational(1), Rational(0)};
    auto mdp = model::buildMdp(raw);
    model::ValueVector<Rational> values(std::vector<Rational>{Rational(2), Rational(0)});
    auto max = solver::bellmanApply(mdp, values, model::Objective::totalReward(OptimizationDirection::Maximize));
    EXPECT_EQ(max[0], Rational(2));
    auto min = solver::bellmanApply(mdp, values, model::Objective::totalReward(OptimizationDirection::Minimize));
    EXPECT_EQ(min[0], Rational(1));
}

TEST(BellmanApply, RejectsWrongDimension) {
    auto mdp = gen::genPiTrap(q("1/10"));
    EXPECT_MDP_ERROR(solver::bellmanApply(mdp, model::ValueVector<double>(3), maxGoal(mdp)), ErrorCode::DimensionMismatch);
}

TEST(BellmanApply, MonotoneOnRandomPairs) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (auto const& instance : fixtures::randomSweep(40)) {
        std::size_t const n = instance.mdp.getNumberOfStates();
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<double> v(n);
            std::vector<double> w(n);
            for (std::size_t s = 0; s < n; ++s) {
                double const scale = instance.objective.isReachability() ? 1.0 : 10.0;
                v[s] = scale * unit(rng);
                w[s] = v[s] + scale * unit(rng) * (trial % 2);
            }
            auto pv = solver::bellmanApply(instance.mdp, model::ValueVector<double>(v), instance.objective);
            auto pw = solver::bellmanApply(instance.mdp, model::ValueVector<double>(w), instance.objective);
            for (std::size_t s = 0; s < n; ++s) {
                EXPECT_LE(pv[s], pw[s]) << "seed " << instance.seed << " state " << s;
            }
        }
    }
}

TEST(SolveVi, QualitativeModelNeedsNoIterations) {
    model::RawMdp raw;
    raw.numStates = 3;
    raw.choices = {{{{1, q("1/2")}, {2, q("1/2")}}}, {{{1, Rational(1)}}}, {{{2, Rational(1)}}}};
    raw.labels["goal"] = {1, 2};
    auto mdp = model::buildMdp(raw);
    auto result = solver::solve(mdp, maxGoal(mdp), solver::parseSolverConfig("vi"));
    EXPECT_EQ(result.iterations, 0u);
    EXPECT_EQ(result.values[0], 1.0);
    EXPECT_EQ(result.soundness, solver::Soundness::Unsound);
}

TEST(SolveVi, HardFamilyFoolsNaiveStopping) {
    auto mdp = gen::genHardMn(20);
    auto objective = model::Objective::reachability(mdp, "goal", OptimizationDirection::Minimize);
    auto result = solver::solve(mdp, objective, solver::parseSolverConfig("vi:eps=1e-6,mode=rel"));
    double const error = std::abs(result.values[0] - 1.0 / 3.0) / (1.0 / 3.0);
    EXPECT_GT(error, 1e-3);
    EXPECT_EQ(result.soundness, solver::Soundness::Unsound);
}

TEST(SolveVi, TrapModelConvergesToOneHalf) {
    auto mdp = gen::genPiTrap(q("1/10"));
    auto result = solver::solve(mdp, maxGoal(mdp), solver::parseSolverConfig("vi:eps=1e-6"));
    EXPECT_LE(result.values[0], 0.5);
    EXPECT_NEAR(result.values[0], 0.5, 1e-4);
    EXPECT_GT(result.iterations, 0u);
}

TEST(SolveVi, IterationLimit) {
    auto mdp = gen::genHardMn(20);
    auto objective = model::Objective::reachability(mdp, "goal", OptimizationDirection::Minimize);
    EXPECT_MDP_ERROR(solver::solve(mdp, objective, solver::parseSolverConfig("vi:maxiter=3")), ErrorCode::IterationLimit);
}

TEST(StoppingCriterion, RelativeAndAbsolute) {
    solver::StoppingCriterion relative;
    EXPECT_TRUE(relative.converged(0, 0));
    EXPECT_FALSE(relative.converged(0, 1e-9));
    EXPECT_TRUE(relative.converged(1.0, 1.0 + 1e-7));
    solver::StoppingCriterion absolute{solver::Precision::Absolute, 1e-3, std::nullopt};
    EXPECT_TRUE(absolute.converged(0, 1e-4));
    solver::StoppingCriterion bad{solver::Precision::Relative, 0, std::nullopt};
    EXPECT_MDP_ERROR(bad.validate(), ErrorCode::BadParameter);
}

TEST(SolveOvi, QualitativeModelIsExact) {
    model::RawMdp raw;
    raw.numStates = 2;
    raw.choices = {{{{1, Rational(1)}}}, {{{1, Rational(1)}}}};
    raw.labels["goal"] = {1};
    auto mdp = model::buildMdp(raw);
    auto result = solver::solve(mdp, maxGoal(mdp), solver::parseSolverConfig("ovi"));
    EXPECT_EQ(result.iterations, 0u);
    EXPECT_EQ((*result.lower)[0], 1.0);
    EXPECT_EQ((*result.upper)[0], 1.0);
}

TEST(SolveOvi, HardFamilyIntervalContainsTwoThirds) {
    auto mdp = gen::genHardMn(8);
    auto result = solver::solve(mdp, maxGoal(mdp), solver::parseSolverConfig("ovi:eps=1e-6"));
    EXPECT_EQ(result.soundness, solver::Soundness::Sound);
    EXPECT_TRUE(result.epsilonCertified);
    EXPECT_LE(Rational((*result.lower)[0]), q("2/3"));
    EXPECT_GE(Rational((*result.upper)[0]), q("2/3"));
}

TEST(SolveOvi, ContainsOracleValueAndCertifiesUpperBound) {
    for (auto const& instance : fixtures::randomSweep(100)) {
        auto expected = oracle::bruteForce(instance.mdp, instance.objective).values;
        auto quotient = graph::collapseMecs(instance.mdp, instance.objective);
        if (!graph::isContracting(quotient)) {
            continue;
        }
        auto raw = solver::solveOvi(quotient, 1e-6);
        auto system = solver::toFloat(solver::makeSystem(quotient));
        auto upper = maybePart(*raw.upper, quotient);
        std::vector<double> next;
        solver::bellman(system, upper, next);
        for (std::size_t s = 0; s < upper.size(); ++s) {
            // Backups that tie with a bound may round up by an ulp.
            EXPECT_LE(next[s], upper[s] * (1 + 4 * std::numeric_limits<double>::epsilon())) << "seed " << instance.seed;
        }
        auto result = solver::liftResult(instance.mdp, quotient, raw);
        for (std::size_t s = 0; s < expected.size(); ++s) {
            if (!expected[s]) {
                EXPECT_TRUE(result.lower->isInfinite(s));
                continue;
            }
            EXPECT_LE(Rational((*result.lower)[s]), *expected[s]) << "seed " << instance.seed << " state " << s;
            EXPECT_GE(Rational((*result.upper)[s]), *expected[s]) << "seed " << instance.seed << " state " << s;
            EXPECT_LE((*result.upper)[s] - (*result.lower)[s], 1e-6 * (*result.lower)[s] + 1e-300);
        }
    }
}

TEST(ViEstimates, ZeroIterationsGiveTargetIndicator) {
    auto mdp = gen::genPiTrap(q("1/10"));
    auto quotient = graph::collapseMecs(mdp, maxGoal(mdp));
    auto estimates = solver::viEstimates(quotient, 0);
    for (std::size_t s = 0; s < quotient.numberOfMaybeStates(); ++s) {
        EXPECT_EQ(estimates[s], 0.0);
    }
    EXPECT_EQ(estimates[quotient.target], 1.0);
    EXPECT_EQ(estimates[quotient.sink], 0.0);
}

TEST(ViEstimates, MonotoneAndBelowExactValues) {
    for (auto const& instance : fixtures::randomSweep(60)) {
        auto expected = oracle::bruteForce(instance.mdp, instance.objective).values;
        auto quotient = graph::collapseMecs(instance.mdp, instance.objective);
        std::vector<double> previous(quotient.model.getNumberOfStates(), 0.0);
        for (std::size_t k : {1, 3, 10, 40}) {
            auto estimates = solver::viEstimates(quotient, k);
            for (std::size_t s = 0; s < expected.size(); ++s) {
                auto qs = quotient.stateMap[s];
                if (qs == graph::Quotient::infiniteState) {
                    continue;
                }
                EXPECT_LE(Rational(estimates[qs]), *expected[s]) << "seed " << instance.seed << " state " << s << " k " << k;
                EXPECT_LE(previous[qs], estimates[qs]);
            }
            previous = estimates.values();
        }
    }
}

TEST(ViEstimates, HardFamilyGreedyPolicyJumps) {
    std::size_t const n = 20;
    auto mdp = gen::genHardMn(n);
    auto quotient = graph::collapseMecs(mdp, maxGoal(mdp));
    auto policy = solver::warmStartPolicy(quotient, solver::viEstimates(quotient, 1));
    for (long i : {1L, -1L}) {
        auto qs = quotient.stateMap[gen::hardMnIndex(n, i)];
        EXPECT_EQ(quotient.origin[qs][policy.choices[qs]].second, 1u) << "state " << i;
    }
}
