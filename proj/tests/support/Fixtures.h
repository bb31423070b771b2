#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "../oracle/Oracle.h"
#include "mdpcheck/gen/Generators.h"
#include "mdpcheck/model/Objective.h"
#include "mdpcheck/model/SparseMdp.h"
#include "mdpcheck/solver/Solve.h"

namespace mdpcheck::fixtures {

struct Instance {
    std::uint64_t seed = 0;
    model::SparseMdp mdp;
    model::Objective objective;
    std::string objectiveSpec;
};

struct SweepOptions {
    std::uint64_t firstSeed = 1;
    std::size_t minStates = 2;
    std::size_t maxStates = 12;
    std::size_t maxActions = 3;
    /// Instances with more policies are skipped so the oracle stays cheap.
    std::size_t policyCap = 2048;
    bool acyclic = false;
    bool rewards = true;
};

inline std::string objectiveSpecFor(std::uint64_t seed, bool rewards) {
    static char const* const specs[] = {"reach:max:goal", "reach:min:goal", "reward:max", "reward:min"};
    return specs[seed % (rewards ? 4 : 2)];
}

/// Random model of the sweep for one seed; parameters are drawn from the seed.
inline Instance randomInstance(std::uint64_t seed, SweepOptions const& options = {}) {
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 17);
    gen::RandomMdpOptions random;
    random.seed = seed;
    random.numStates = options.minStates + rng() % (options.maxStates - options.minStates + 1);
    random.maxActions = 1 + rng() % options.maxActions;
    random.density = 0.15 + static_cast<double>(rng() % 40) / 100.0;
    random.targetFraction = 0.1 + static_cast<double>(rng() % 20) / 100.0;
    random.acyclic = options.acyclic;
    if (options.rewards) {
        random.maxReward = 1 + rng() % 4;
    }
    Instance instance;
    instance.seed = seed;
    instance.mdp = gen::genRandomMdp(random);
    instance.objectiveSpec = objectiveSpecFor(seed, options.rewards);
    instance.objective = model::parseObjective(instance.mdp, instance.objectiveSpec);
    return instance;
}

/// The first `count` instances of the seed sweep whose policy count fits the cap.
inline std::vector<Instance> randomSweep(std::size_t count, SweepOptions const& options = {}) {
    std::vector<Instance> instances;
    for (std::uint64_t seed = options.firstSeed; instances.size() < count; ++seed) {
        auto instance = randomInstance(seed, options);
        if (oracle::policyCount(instance.mdp, options.policyCap) <= options.policyCap) {
            instances.push_back(std::move(instance));
        }
    }
    return instances;
}

inline solver::SolveResult solveWith(Instance const& instance, std::string const& spec) {
    return solver::solve(instance.mdp, instance.objective, solver::parseSolverConfig(spec));
}

/// Exact values of a result as oracle values (nullopt for infinity).
inline std::vector<oracle::OracleValue> exactOf(solver::SolveResult const& result) {
    std::vector<oracle::OracleValue> values;
    auto const& exact = *result.exactValues;
    for (std::size_t s = 0; s < exact.size(); ++s) {
        values.push_back(exact.isInfinite(s) ? oracle::OracleValue() : oracle::OracleValue(exact[s]));
    }
    return values;
}

inline std::string describe(oracle::OracleValue const& value) {
    return value ? toString(*value) : std::string("inf");
}

/// |a - b| <= tol * |b|, with infinities equal only to each other.
inline bool closeTo(double a, bool aInfinite, oracle::OracleValue const& b, double tol) {
    if (!b || aInfinite) {
        return !b && aInfinite;
    }
    double const exact = toDouble(*b);
    return std::abs(a - exact) <= tol * std::abs(exact) + 1e-12;
}

}  // namespace mdpcheck::fixtures
