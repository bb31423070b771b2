#pragma once

#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "mdpcheck/graph/StateSet.h"
#include "mdpcheck/model/Objective.h"
#include "mdpcheck/model/SparseMdp.h"

namespace mdpcheck::graph {

/// Preprocessed model with equivalent values. Quotient states [0, target) are
/// the states whose value is not settled by graph analysis; `target` and
/// `sink` are absorbing and carry values 1 (reachability) and 0.
struct Quotient {
    static constexpr std::size_t infiniteState = std::numeric_limits<std::size_t>::max();

    model::SparseMdp model;
    /// Original state -> quotient state; `infiniteState` for states whose
    /// expected reward is infinite.
    std::vector<std::size_t> stateMap;
    std::size_t target = 0;
    std::size_t sink = 0;
    /// Original states with infinite value (reward objectives only).
    StateSet infinite;
    model::Objective objective;
    /// origin[q][a] is the (original state, action) behind action a of
    /// quotient state q < target.
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> origin;

    std::size_t numberOfMaybeStates() const {
        return target;
    }
};

enum class InfinityHandling {
    /// States with infinite value are dropped from the quotient and mapped to
    /// `Quotient::infiniteState`.
    Remove,
    /// Infinite values raise RewardInMec (max) or InfiniteValueState (min).
    Reject
};

/// Qualitative preprocessing and MEC collapsing: prob0 states go to the
/// sink, prob1 states (reachability) to the target, and each MEC of the
/// remaining states becomes one state whose actions are the member actions
/// leaving it. For min total reward only zero-reward end components exist as
/// sink candidates; end components with positive reward are kept since every
/// policy staying in them has infinite cost.
Quotient collapseMecs(model::SparseMdp const& mdp, model::Objective const& objective, InfinityHandling handling = InfinityHandling::Remove);

/// Graph check that every policy reaches target or sink almost surely.
bool isContracting(Quotient const& quotient);

}  // namespace mdpcheck::graph
