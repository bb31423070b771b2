#include "mdpcheck/graph/Qualitative.h"

#include <deque>

#include "mdpcheck/graph/Decomposition.h"

namespace mdpcheck::graph {

namespace {

struct Predecessors {
    /// choicesInto[t] lists choices with t in their support.
    std::vector<std::vector<std::size_t>> choicesInto;
    /// owner[c] is the state that owns choice c.
    std::vector<std::size_t> owner;

    explicit Predecessors(model::SparseMdp const& mdp) : choicesInto(mdp.getNumberOfStates()), owner(mdp.getNumberOfChoices()) {
        for (std::size_t s = 0; s < mdp.getNumberOfStates(); ++s) {
            for (std::size_t c = mdp.getChoiceOffset(s); c < mdp.getChoiceOffset(s + 1); ++c) {
                owner[c] = s;
                for (auto const& t : mdp.getTransitions(c)) {
                    choicesInto[t.target].push_back(c);
                }
            }
        }
    }
};

bool isAllowed(ChoiceMask const& allowed, std::size_t choice) {
    return allowed.empty() || allowed[choice];
}

/// Choices whose support stays inside `region`.
ChoiceMask stayingChoices(model::SparseMdp const& mdp, StateSet const& region, ChoiceMask const& allowed) {
    ChoiceMask result(mdp.getNumberOfChoices(), false);
    for (std::size_t c = 0; c < mdp.getNumberOfChoices(); ++c) {
        if (!isAllowed(allowed, c)) {
            continue;
        }
        bool stays = true;
        for (auto const& t : mdp.getTransitions(c)) {
            if (!region[t.target]) {
                stays = false;
                break;
            }
        }
        result[c] = stays;
    }
    return result;
}

StateSet positiveRewardStates(model::SparseMdp const& mdp) {
    StateSet result(mdp.getNumberOfStates());
    if (mdp.hasRewards()) {
        for (std::size_t s = 0; s < mdp.getNumberOfStates(); ++s) {
            if (mdp.getReward(s) > 0) {
                result.set(s);
            }
        }
    }
    return result;
}

StateSet prob1Max(model::SparseMdp const& mdp, StateSet const& target) {
    StateSet candidates(mdp.getNumberOfStates(), true);
    while (true) {
        auto allowed = stayingChoices(mdp, candidates, {});
        auto reaching = existsReach(mdp, candidates, target & candidates, allowed);
        if (reaching == candidates) {
            return candidates;
        }
        candidates = reaching;
    }
}

}  // namespace

StateSet existsReach(model::SparseMdp const& mdp, StateSet const& region, StateSet const& goal, ChoiceMask const& allowed) {
    Predecessors pre(mdp);
    StateSet result = goal;
    std::deque<std::size_t> queue;
    for (auto s : goal.members()) {
        queue.push_back(s);
    }
    while (!queue.empty()) {
        auto t = queue.front();
        queue.pop_front();
        for (auto c : pre.choicesInto[t]) {
            auto s = pre.owner[c];
            if (!result[s] && region[s] && isAllowed(allowed, c)) {
                result.set(s);
                queue.push_back(s);
            }
        }
    }
    return result;
}

StateSet forallReach(model::SparseMdp const& mdp, StateSet const& region, StateSet const& goal, ChoiceMask const& allowed) {
    Predecessors pre(mdp);
    std::size_t const n = mdp.getNumberOfStates();
    std::vector<std::size_t> pending(n, 0);
    for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t c = mdp.getChoiceOffset(s); c < mdp.getChoiceOffset(s + 1); ++c) {
            pending[s] += isAllowed(allowed, c) ? 1 : 0;
        }
    }
    std::vector<bool> hit(mdp.getNumberOfChoices(), false);
    StateSet result = goal;
    std::deque<std::size_t> queue;
    for (auto s : goal.members()) {
        queue.push_back(s);
    }
    while (!queue.empty()) {
        auto t = queue.front();
        queue.pop_front();
        for (auto c : pre.choicesInto[t]) {
            auto s = pre.owner[c];
            if (result[s] || !region[s] || !isAllowed(allowed, c) || hit[c]) {
                continue;
            }
            hit[c] = true;
            if (--pending[s] == 0) {
                result.set(s);
                queue.push_back(s);
            }
        }
    }
    return result;
}

StateSet prob0(model::SparseMdp const& mdp, StateSet const& target, model::OptimizationDirection dir) {
    StateSet all(mdp.getNumberOfStates(), true);
    if (model::minimize(dir)) {
        return ~forallReach(mdp, all, target);
    }
    return ~existsReach(mdp, all, target);
}

StateSet prob1(model::SparseMdp const& mdp, StateSet const& target, model::OptimizationDirection dir) {
    if (model::minimize(dir)) {
        auto avoidable = prob0(mdp, target, dir);
        auto notTarget = ~target;
        return ~existsReach(mdp, notTarget, avoidable);
    }
    return prob1Max(mdp, target);
}

StateSet rewardZeroStates(model::SparseMdp const& mdp, model::OptimizationDirection dir) {
    return prob0(mdp, positiveRewardStates(mdp), dir);
}

StateSet rewardFinitenessCheck(model::SparseMdp const& mdp, model::Objective const& objective) {
    std::size_t const n = mdp.getNumberOfStates();
    auto positive = positiveRewardStates(mdp);
    if (positive.empty()) {
        return StateSet(n);
    }
    if (model::minimize(objective.direction)) {
        auto zeroRegion = rewardZeroStates(mdp, objective.direction);
        return ~prob1Max(mdp, zeroRegion);
    }
    StateSet positiveMecs(n);
    for (auto const& mec : mecDecomposition(mdp)) {
        bool hasPositive = false;
        for (auto s : mec.states) {
            hasPositive = hasPositive || positive[s];
        }
        if (hasPositive) {
            for (auto s : mec.states) {
                positiveMecs.set(s);
            }
        }
    }
    return existsReach(mdp, StateSet(n, true), positiveMecs);
}

}  // namespace mdpcheck::graph
