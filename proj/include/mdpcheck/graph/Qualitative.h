#pragma once

#include <vector>

#include "mdpcheck/graph/StateSet.h"
#include "mdpcheck/model/Objective.h"
#include "mdpcheck/model/SparseMdp.h"

namespace mdpcheck::graph {

/// Per-choice mask over global choice indices. An empty mask allows all.
using ChoiceMask = std::vector<bool>;

/// States of `region` (plus `goal` itself) from which some policy reaches
/// `goal` with positive probability, moving only through `region` and using
/// only choices allowed by `allowed`.
StateSet existsReach(model::SparseMdp const& mdp, StateSet const& region, StateSet const& goal, ChoiceMask const& allowed = {});

/// States of `region` (plus `goal`) from which every policy using allowed
/// choices reaches `goal` with positive probability.
StateSet forallReach(model::SparseMdp const& mdp, StateSet const& region, StateSet const& goal, ChoiceMask const& allowed = {});

/// States with value exactly 0: for max, no policy can reach `target`; for
/// min, some policy avoids `target` forever.
StateSet prob0(model::SparseMdp const& mdp, StateSet const& target, model::OptimizationDirection dir);

/// States with value exactly 1 under the respective direction.
StateSet prob1(model::SparseMdp const& mdp, StateSet const& target, model::OptimizationDirection dir);

/// States whose optimal expected total reward is exactly 0.
StateSet rewardZeroStates(model::SparseMdp const& mdp, model::OptimizationDirection dir);

/// States whose optimal expected total reward is infinite. For max: a MEC
/// containing a positive-reward state is reachable. For min: no policy
/// reaches the zero-value region almost surely.
StateSet rewardFinitenessCheck(model::SparseMdp const& mdp, model::Objective const& objective);

}  // namespace mdpcheck::graph
