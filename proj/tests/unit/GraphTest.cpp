#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "mdpcheck/gen/Generators.h"
#include "mdpcheck/graph/Decomposition.h"
#include "mdpcheck/graph/Qualitative.h"
#include "mdpcheck/graph/Quotient.h"
#include "mdpcheck/solver/Solve.h"
#include "oracle/Oracle.h"
#include "support/Expect.h"
#include "support/Fixtures.h"

using namespace mdpcheck;
using graph::StateSet;
using model::OptimizationDirection;

namespace {

Rational q(std::string const& text) {
    return parseRational(text);
}

model::SparseMdp chain(std::size_t length) {
    model::RawMdp raw;
    raw.numStates = length;
    for (std::size_t s = 0; s < length; ++s) {
        raw.choices.push_back({{{std::min(s + 1, length - 1), Rational(1)}}});
    }
    raw.labels["goal"] = {length - 1};
    return model::buildMdp(raw);
}

/// 0 <-> 1 deterministically; 0 may also gamble: half to goal 2, half to trap 3.
model::SparseMdp cycleWithEscape() {
    model::RawMdp raw;
    raw.numStates = 4;
    raw.choices = {
        {{{1, Rational(1)}}, {{2, q("1/2")}, {3, q("1/2")}}},
        {{{0, Rational(1)}}},
        {{{2, Rational(1)}}},
        {{{3, Rational(1)}}},
    };
    raw.labels["goal"] = {2};
    return model::buildMdp(raw);
}

model::SparseMdp rewardModel(std::vector<model::RawMdp::Distribution> rows, std::vector<long> rewards) {
    model::RawMdp raw;
    raw.numStates = rows.size();
    for (auto& row : rows) {
        raw.choices.push_back({row});
    }
    std::vector<Rational> r;
    for (auto v : rewards) {
        r.emplace_back(v);
    }
    raw.rewards = r;
    return model::buildMdp(raw);
}

StateSet oracleSet(std::vector<oracle::OracleValue> const& values, Rational const& level) {
    StateSet result(values.size());
    for (std::size_t s = 0; s < values.size(); ++s) {
        if (values[s] && *values[s] == level) {
            result.set(s);
        }
    }
    return result;
}

void expectTopologicalOrder(model::SparseMdp const& mdp, std::vector<graph::Scc> const& sccs) {
    std::vector<std::size_t> position(mdp.getNumberOfStates(), sccs.size());
    for (std::size_t i = 0; i < sccs.size(); ++i) {
        EXPECT_TRUE(std::is_sorted(sccs[i].begin(), sccs[i].end()));
        for (auto s : sccs[i]) {
            EXPECT_EQ(position[s], sccs.size()) << "state " << s << " in two components";
            position[s] = i;
        }
    }
    for (std::size_t s = 0; s < mdp.getNumberOfStates(); ++s) {
        ASSERT_LT(position[s], sccs.size()) << "state " << s << " in no component";
        for (std::size_t c = mdp.getChoiceOffset(s); c < mdp.getChoiceOffset(s + 1); ++c) {
            for (auto const& t : mdp.getTransitions(c)) {
                EXPECT_LE(position[t.target], position[s]);
            }
        }
    }
}

}  // namespace

TEST(Prob0, HardFamilyMax) {
    for (std::size_t n : {2, 4, 9}) {
        auto mdp = gen::genHardMn(n);
        auto zero = graph::prob0(mdp, mdp.getStates("goal"), OptimizationDirection::Maximize);
        EXPECT_EQ(zero.members(), std::vector<std::size_t>{gen::hardMnIndex(n, -static_cast<long>(n))});
    }
}

TEST(Prob0, TrapModelMax) {
    auto mdp = gen::genPiTrap(q("1/10"));
    EXPECT_EQ(graph::prob0(mdp, mdp.getStates("goal"), OptimizationDirection::Maximize).members(), std::vector<std::size_t>{3});
}

TEST(Prob1, TargetsAlwaysIncluded) {
    for (auto const& instance : fixtures::randomSweep(30, {.rewards = false})) {
        auto const target = instance.mdp.getStates("goal");
        for (auto direction : {OptimizationDirection::Minimize, OptimizationDirection::Maximize}) {
            EXPECT_TRUE(target.isSubsetOf(graph::prob1(instance.mdp, target, direction)));
        }
    }
}

TEST(Prob1, HardFamilyAndTrapMax) {
    auto mn = gen::genHardMn(5);
    EXPECT_EQ(graph::prob1(mn, mn.getStates("goal"), OptimizationDirection::Maximize).members(), std::vector<std::size_t>{5});
    auto trap = gen::genPiTrap(q("1/10"));
    EXPECT_EQ(graph::prob1(trap, trap.getStates("goal"), OptimizationDirection::Maximize).members(), std::vector<std::size_t>{4});
}

TEST(Qualitative, MatchesOracleOnRandomModels) {
    for (auto const& instance : fixtures::randomSweep(150, {.rewards = false})) {
        auto const target = instance.mdp.getStates("goal");
        for (auto direction : {OptimizationDirection::Minimize, OptimizationDirection::Maximize}) {
            auto objective = model::Objective::reachability(target, direction);
            auto values = oracle::bruteForce(instance.mdp, objective).values;
            EXPECT_EQ(graph::prob0(instance.mdp, target, direction), oracleSet(values, Rational(0))) << "seed " << instance.seed;
            EXPECT_EQ(graph::prob1(instance.mdp, target, direction), oracleSet(values, Rational(1))) << "seed " << instance.seed;
        }
    }
}

TEST(SccTopological, AcyclicChain) {
    auto mdp = chain(4);
    auto sccs = graph::sccTopological(mdp);
    std::vector<graph::Scc> expected{{3}, {2}, {1}, {0}};
    EXPECT_EQ(sccs, expected);
}

TEST(SccTopological, HardFamilyHasThreeComponents) {
    for (std::size_t n : {2, 6}) {
        auto mdp = gen::genHardMn(n);
        auto sccs = graph::sccTopological(mdp);
        ASSERT_EQ(sccs.size(), 3u);
        std::set<graph::Scc> singletons{sccs[0], sccs[1]};
        std::set<graph::Scc> expected{{gen::hardMnIndex(n, static_cast<long>(n))}, {gen::hardMnIndex(n, -static_cast<long>(n))}};
        EXPECT_EQ(singletons, expected);
        EXPECT_EQ(sccs[2].size(), 2 * n - 1);
        expectTopologicalOrder(mdp, sccs);
    }
}

TEST(SccTopological, SelfLoop) {
    auto sccs = graph::sccTopological(chain(1));
    EXPECT_EQ(sccs, std::vector<graph::Scc>{{0}});
}

TEST(SccTopological, PartitionAndEdgeOrderOnRandomModels) {
    for (auto const& instance : fixtures::randomSweep(60, {.maxStates = 30, .policyCap = SIZE_MAX / 4})) {
        expectTopologicalOrder(instance.mdp, graph::sccTopological(instance.mdp));
    }
}

TEST(MecDecomposition, AbsorbingState) {
    auto mecs = graph::mecDecomposition(chain(1));
    ASSERT_EQ(mecs.size(), 1u);
    EXPECT_EQ(mecs[0].states, std::vector<std::size_t>{0});
    EXPECT_EQ(mecs[0].actions, std::vector<std::vector<std::size_t>>{{0}});
}

TEST(MecDecomposition, HardFamilyHasOnlyAbsorbingMecs) {
    std::size_t const n = 7;
    auto mecs = graph::mecDecomposition(gen::genHardMn(n));
    ASSERT_EQ(mecs.size(), 2u);
    std::set<std::vector<std::size_t>> found{mecs[0].states, mecs[1].states};
    std::set<std::vector<std::size_t>> expected{{gen::hardMnIndex(n, 7)}, {gen::hardMnIndex(n, -7)}};
    EXPECT_EQ(found, expected);
}

TEST(MecDecomposition, TwoStateCycle) {
    model::RawMdp raw;
    raw.numStates = 2;
    raw.choices = {{{{1, Rational(1)}}}, {{{0, Rational(1)}}}};
    auto mecs = graph::mecDecomposition(model::buildMdp(raw));
    ASSERT_EQ(mecs.size(), 1u);
    EXPECT_EQ(mecs[0].states, (std::vector<std::size_t>{0, 1}));
}

TEST(MecDecomposition, DropsLeavingActions) {
    auto mecs = graph::mecDecomposition(cycleWithEscape());
    ASSERT_EQ(mecs.size(), 3u);
    EXPECT_EQ(mecs[0].states, (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(mecs[0].actions, (std::vector<std::vector<std::size_t>>{{0}, {0}}));
}

TEST(CollapseMecs, NoEndComponentsKeepsStructure) {
    auto mdp = gen::genPiTrap(q("1/10"));
    auto quotient = graph::collapseMecs(mdp, model::Objective::reachability(mdp, "goal", OptimizationDirection::Maximize));
    EXPECT_EQ(quotient.numberOfMaybeStates(), 3u);
    EXPECT_EQ(quotient.model.getNumberOfStates(), 5u);
    EXPECT_EQ(quotient.stateMap, (std::vector<std::size_t>{0, 1, 2, quotient.sink, quotient.target}));
    EXPECT_EQ(quotient.model.getNumberOfChoices(0), 2u);
    EXPECT_TRUE(graph::isContracting(quotient));
}

TEST(CollapseMecs, CanonicalSinkWithoutZeroStates) {
    auto mdp = chain(3);
    auto quotient = graph::collapseMecs(mdp, model::Objective::reachability(mdp, "goal", OptimizationDirection::Maximize));
    EXPECT_EQ(quotient.numberOfMaybeStates(), 0u);
    EXPECT_EQ(quotient.model.getNumberOfStates(), 2u);
    EXPECT_NE(quotient.sink, quotient.target);
}

TEST(CollapseMecs, CycleBecomesOneStateWithEscapeOnly) {
    auto mdp = cycleWithEscape();
    auto quotient = graph::collapseMecs(mdp, model::Objective::reachability(mdp, "goal", OptimizationDirection::Maximize));
    ASSERT_EQ(quotient.numberOfMaybeStates(), 1u);
    EXPECT_EQ(quotient.stateMap[0], 0u);
    EXPECT_EQ(quotient.stateMap[1], 0u);
    ASSERT_EQ(quotient.model.getNumberOfChoices(0), 1u);
    EXPECT_EQ(quotient.origin[0], (std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}}));
    EXPECT_TRUE(graph::isContracting(quotient));
    auto result = solver::solve(mdp, quotient.objective, solver::parseSolverConfig("lp"));
    EXPECT_EQ((*result.exactValues)[1], q("1/2"));
}

TEST(CollapseMecs, RejectModeReportsInfiniteRewards) {
    auto mdp = rewardModel({{{0, Rational(1)}}}, {1});
    EXPECT_MDP_ERROR(graph::collapseMecs(mdp, model::Objective::totalReward(OptimizationDirection::Maximize), graph::InfinityHandling::Reject),
                     ErrorCode::RewardInMec);
    EXPECT_MDP_ERROR(graph::collapseMecs(mdp, model::Objective::totalReward(OptimizationDirection::Minimize), graph::InfinityHandling::Reject),
                     ErrorCode::InfiniteValueState);
    auto removed = graph::collapseMecs(mdp, model::Objective::totalReward(OptimizationDirection::Maximize));
    EXPECT_EQ(removed.stateMap[0], graph::Quotient::infiniteState);
}

TEST(CollapseMecs, PreservesValuesAndContracts) {
    graph::Quotient quotient;
    for (auto const& instance : fixtures::randomSweep(120, {.maxStates = 20, .policyCap = 4096})) {
        auto expected = oracle::bruteForce(instance.mdp, instance.objective, 4096).values;
        quotient = graph::collapseMecs(instance.mdp, instance.objective);
        if (instance.objectiveSpec != "reward:min") {
            EXPECT_TRUE(graph::isContracting(quotient)) << "seed " << instance.seed;
        }
        auto result = fixtures::solveWith(instance, "lp");
        EXPECT_EQ(fixtures::exactOf(result), expected) << "seed " << instance.seed << " " << instance.objectiveSpec;
        for (std::size_t s = 0; s < expected.size(); ++s) {
            EXPECT_EQ(quotient.stateMap[s] == graph::Quotient::infiniteState, !expected[s]);
        }
    }
}

TEST(RewardFiniteness, SelfLoopWithReward) {
    auto mdp = rewardModel({{{0, Rational(1)}}}, {1});
    for (auto direction : {OptimizationDirection::Minimize, OptimizationDirection::Maximize}) {
        EXPECT_EQ(graph::rewardFinitenessCheck(mdp, model::Objective::totalReward(direction)).members(), std::vector<std::size_t>{0});
    }
}

TEST(RewardFiniteness, RewardFreeModel) {
    auto mdp = rewardModel({{{1, Rational(1)}}, {{0, Rational(1)}}}, {0, 0});
    EXPECT_TRUE(graph::rewardFinitenessCheck(mdp, model::Objective::totalReward(OptimizationDirection::Maximize)).empty());
}

TEST(RewardFiniteness, GeometricChain) {
    auto mdp = rewardModel({{{0, q("1/2")}, {1, q("1/2")}}, {{1, Rational(1)}}}, {1, 0});
    auto objective = model::Objective::totalReward(OptimizationDirection::Maximize);
    EXPECT_TRUE(graph::rewardFinitenessCheck(mdp, objective).empty());
    auto result = solver::solve(mdp, objective, solver::parseSolverConfig("lp"));
    EXPECT_EQ((*result.exactValues)[0], Rational(2));
}

TEST(RewardFiniteness, MatchesOracleOnRandomModels) {
    for (auto const& instance : fixtures::randomSweep(200)) {
        if (instance.objective.isReachability()) {
            continue;
        }
        auto values = oracle::bruteForce(instance.mdp, instance.objective).values;
        StateSet infinite(values.size());
        for (std::size_t s = 0; s < values.size(); ++s) {
            infinite.set(s, !values[s]);
        }
        EXPECT_EQ(graph::rewardFinitenessCheck(instance.mdp, instance.objective), infinite) << "seed " << instance.seed << " " << instance.objectiveSpec;
    }
}
