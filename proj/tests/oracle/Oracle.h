#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mdpcheck/Rational.h"
#include "mdpcheck/model/Objective.h"
#include "mdpcheck/model/SparseMdp.h"

namespace mdpcheck::oracle {

/// Per-state value; nullopt is an infinite expected reward.
using OracleValue = std::optional<Rational>;

/// Exact values of a Markov chain given as one successor list per state,
/// solved by graph search plus dense Gauss-Jordan elimination.
std::vector<OracleValue> chainValues(model::SparseMdp const& mdp, std::vector<std::size_t> const& policy, model::Objective const& objective);

struct OracleResult {
    std::vector<OracleValue> values;
    std::size_t policies = 0;
};

/// Optimum over all memoryless deterministic policies, pointwise.
/// Throws std::length_error if there are more than `maxPolicies`.
OracleResult bruteForce(model::SparseMdp const& mdp, model::Objective const& objective, std::size_t maxPolicies = 1 << 16);

std::size_t policyCount(model::SparseMdp const& mdp, std::size_t cap);

}  // namespace mdpcheck::oracle
