#include "mdpcheck/graph/Quotient.h"

#include <algorithm>
#include <map>

#include "mdpcheck/Errors.h"
#include "mdpcheck/graph/Decomposition.h"
#include "mdpcheck/graph/Qualitative.h"

namespace mdpcheck::graph {

Quotient collapseMecs(model::SparseMdp const& mdp, model::Objective const& objective, InfinityHandling handling) {
    objective.validateFor(mdp);
    std::size_t const n = mdp.getNumberOfStates();
    bool const reach = objective.isReachability();
    bool const minimizing = model::minimize(objective.direction);

    StateSet infinite(n);
    StateSet zero(n);
    StateSet one(n);
    if (reach) {
        zero = prob0(mdp, objective.target, objective.direction);
        one = prob1(mdp, objective.target, objective.direction);
    } else {
        infinite = rewardFinitenessCheck(mdp, objective);
        if (!infinite.empty() && handling == InfinityHandling::Reject) {
            if (minimizing) {
                throw Error(ErrorCode::InfiniteValueState, std::to_string(infinite.count()) + " states have infinite minimal expected reward");
            }
            throw Error(ErrorCode::RewardInMec, "an end component with positive reward is reachable from " + std::to_string(infinite.count()) + " states");
        }
        zero = rewardZeroStates(mdp, objective.direction).minus(infinite);
    }
    StateSet maybe = ~(zero | one | infinite);

    // Maybe-state choices that never risk an infinite value.
    ChoiceMask finiteChoices(mdp.getNumberOfChoices(), false);
    for (auto s : maybe.members()) {
        bool any = false;
        for (std::size_t c = mdp.getChoiceOffset(s); c < mdp.getChoiceOffset(s + 1); ++c) {
            bool ok = true;
            for (auto const& t : mdp.getTransitions(c)) {
                ok = ok && !infinite[t.target];
            }
            finiteChoices[c] = ok;
            any = any || ok;
        }
        if (!any) {
            throw std::logic_error("finite-valued state without finite-valued action");
        }
    }

    std::vector<EndComponent> mecs;
    if (!(minimizing && !reach)) {
        mecs = mecDecomposition(mdp, maybe, finiteChoices);
    }
    std::vector<std::size_t> mecOf(n, Quotient::infiniteState);
    for (std::size_t i = 0; i < mecs.size(); ++i) {
        for (auto s : mecs[i].states) {
            mecOf[s] = i;
        }
    }

    Quotient q;
    q.objective = objective;
    q.infinite = infinite;
    q.stateMap.assign(n, Quotient::infiniteState);
    std::vector<std::size_t> mecId(mecs.size(), Quotient::infiniteState);
    std::vector<std::vector<std::size_t>> members;
    for (std::size_t s = 0; s < n; ++s) {
        if (!maybe[s]) {
            continue;
        }
        if (mecOf[s] != Quotient::infiniteState) {
            auto& id = mecId[mecOf[s]];
            if (id == Quotient::infiniteState) {
                id = members.size();
                members.push_back(mecs[mecOf[s]].states);
            }
            q.stateMap[s] = id;
        } else {
            q.stateMap[s] = members.size();
            members.push_back({s});
        }
    }
    std::size_t const k = members.size();
    q.target = k;
    q.sink = k + 1;
    for (std::size_t s = 0; s < n; ++s) {
        if (zero[s]) {
            q.stateMap[s] = q.sink;
        } else if (one[s]) {
            q.stateMap[s] = q.target;
        }
    }

    model::RawMdp raw;
    raw.numStates = k + 2;
    auto initial = q.stateMap[mdp.getInitialState()];
    raw.initialState = initial == Quotient::infiniteState ? q.sink : initial;
    raw.choices.resize(k + 2);
    q.origin.resize(k);
    if (!reach) {
        raw.rewards = std::vector<Rational>(k + 2, Rational(0));
    }
    for (std::size_t id = 0; id < k; ++id) {
        bool collapsed = members[id].size() > 1 || mecOf[members[id].front()] != Quotient::infiniteState;
        for (auto s : members[id]) {
            for (std::size_t a = 0; a < mdp.getNumberOfChoices(s); ++a) {
                std::size_t c = mdp.getChoiceIndex(s, a);
                if (!finiteChoices[c]) {
                    continue;
                }
                bool leaves = false;
                std::map<std::size_t, Rational> distribution;
                for (auto const& t : mdp.getTransitions(c)) {
                    distribution[q.stateMap[t.target]] += t.probability;
                    leaves = leaves || q.stateMap[t.target] != id;
                }
                if (collapsed && !leaves) {
                    continue;
                }
                raw.choices[id].emplace_back(distribution.begin(), distribution.end());
                q.origin[id].emplace_back(s, a);
            }
        }
        if (raw.choices[id].empty()) {
            throw std::logic_error("collapsed end component without leaving action");
        }
        if (!reach) {
            // Collapsed components only arise for zero-reward end components.
            (*raw.rewards)[id] = collapsed ? Rational(0) : mdp.getReward(members[id].front());
        }
    }
    raw.choices[q.target].push_back({{q.target, Rational(1)}});
    raw.choices[q.sink].push_back({{q.sink, Rational(1)}});
    raw.labels["goal"] = {q.target};
    raw.labels["sink"] = {q.sink};
    q.model = model::buildMdp(raw);
    return q;
}

bool isContracting(Quotient const& quotient) {
    StateSet terminal(quotient.model.getNumberOfStates(), {quotient.target, quotient.sink});
    return prob1(quotient.model, terminal, model::OptimizationDirection::Minimize).full();
}

}  // namespace mdpcheck::graph
