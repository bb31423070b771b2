#include <gtest/gtest.h>

#include "mdpcheck/gen/Generators.h"
#include "oracle/Oracle.h"

using namespace mdpcheck;
using model::OptimizationDirection;
using oracle::OracleValue;

namespace {

Rational q(std::string const& text) {
    return parseRational(text);
}

model::SparseMdp geometricChain() {
    model::RawMdp raw;
    raw.numStates = 2;
    raw.choices = {{{{0, q("1/2")}, {1, q("1/2")}}}, {{{1, Rational(1)}}}};
    raw.rewards = std::vector<Rational>{Rational(1), Rational(0)};
    return model::buildMdp(raw);
}

}  // namespace

TEST(Oracle, TrapModelBothDirections) {
    auto mdp = gen::genPiTrap(q("1/10"));
    auto max = oracle::bruteForce(mdp, model::Objective::reachability(mdp, "goal", OptimizationDirection::Maximize));
    EXPECT_EQ(max.policies, 2u);
    std::vector<OracleValue> expectedMax{q("1/2"), q("1/10"), q("1/2"), Rational(0), Rational(1)};
    EXPECT_EQ(max.values, expectedMax);
    auto min = oracle::bruteForce(mdp, model::Objective::reachability(mdp, "goal", OptimizationDirection::Minimize));
    std::vector<OracleValue> expectedMin{q("1/10"), q("1/10"), q("7/50"), Rational(0), Rational(1)};
    EXPECT_EQ(min.values, expectedMin);
}

TEST(Oracle, GeometricRewardChain) {
    auto mdp = geometricChain();
    auto values = oracle::chainValues(mdp, {0, 0}, model::Objective::totalReward(OptimizationDirection::Maximize));
    EXPECT_EQ(values[0], OracleValue(Rational(2)));
    EXPECT_EQ(values[1], OracleValue(Rational(0)));
}

TEST(Oracle, RewardLoopIsInfinite) {
    model::RawMdp raw;
    raw.numStates = 2;
    raw.choices = {{{{1, Rational(1)}}}, {{{1, Rational(1)}}}};
    raw.rewards = std::vector<Rational>{Rational(0), Rational(1)};
    auto mdp = model::buildMdp(raw);
    auto values = oracle::chainValues(mdp, {0, 0}, model::Objective::totalReward(OptimizationDirection::Minimize));
    EXPECT_FALSE(values[0]);
    EXPECT_FALSE(values[1]);
}

TEST(Oracle, InfinityOrdersAboveEverything) {
    model::RawMdp raw;
    raw.numStates = 2;
    raw.choices = {{{{0, Rational(1)}}, {{1, Rational(1)}}}, {{{1, Rational(1)}}}};
    raw.rewards = std::vector<Rational>{Rational(1), Rational(0)};
    auto mdp = model::buildMdp(raw);
    auto max = oracle::bruteForce(mdp, model::Objective::totalReward(OptimizationDirection::Maximize));
    EXPECT_FALSE(max.values[0]);
    auto min = oracle::bruteForce(mdp, model::Objective::totalReward(OptimizationDirection::Minimize));
    EXPECT_EQ(min.values[0], OracleValue(Rational(1)));
}

TEST(Oracle, HardFamilySmallestMember) {
    auto mdp = gen::genHardMn(2);
    auto min = oracle::bruteForce(mdp, model::Objective::reachability(mdp, "goal", OptimizationDirection::Minimize));
    auto max = oracle::bruteForce(mdp, model::Objective::reachability(mdp, "goal", OptimizationDirection::Maximize));
    EXPECT_EQ(min.policies, 4u);
    EXPECT_EQ(min.values[0], OracleValue(q("1/3")));
    EXPECT_EQ(max.values[0], OracleValue(q("2/3")));
}

TEST(Oracle, PolicyCountCaps) {
    auto mdp = gen::genHardMn(5);
    EXPECT_EQ(oracle::policyCount(mdp, 1 << 20), 256u);
    EXPECT_EQ(oracle::policyCount(mdp, 100), 101u);
    EXPECT_THROW(oracle::bruteForce(mdp, model::Objective::reachability(mdp, "goal", OptimizationDirection::Maximize), 100), std::length_error);
}
