#include "mdpcheck/model/SparseMdp.h"

#include <algorithm>

#include "mdpcheck/Errors.h"

namespace mdpcheck::model {

graph::StateSet SparseMdp::getStates(std::string const& label) const {
    auto it = labels.find(label);
    if (it == labels.end()) {
        throw Error(ErrorCode::BadParameter, "unknown label '" + label + "'");
    }
    return graph::StateSet(numStates, it->second);
}

bool SparseMdp::isDeterministic() const {
    for (std::size_t s = 0; s < numStates; ++s) {
        if (getNumberOfChoices(s) != 1) {
            return false;
        }
    }
    return true;
}

RawMdp SparseMdp::toRaw() const {
    RawMdp raw;
    raw.numStates = numStates;
    raw.initialState = initialState;
    raw.labels = labels;
    if (hasRewards()) {
        raw.rewards = rewards;
    }
    raw.choices.resize(numStates);
    for (std::size_t s = 0; s < numStates; ++s) {
        for (std::size_t c = groupStart[s]; c < groupStart[s + 1]; ++c) {
            RawMdp::Distribution distribution;
            for (auto const& t : getTransitions(c)) {
                distribution.emplace_back(t.target, t.probability);
            }
            raw.choices[s].push_back(std::move(distribution));
        }
    }
    return raw;
}

bool SparseMdp::operator==(SparseMdp const& other) const {
    return numStates == other.numStates && initialState == other.initialState && groupStart == other.groupStart && choiceStart == other.choiceStart &&
           transitions == other.transitions && rewards == other.rewards && labels == other.labels;
}

SparseMdp buildMdp(RawMdp const& raw) {
    if (raw.numStates == 0) {
        throw Error(ErrorCode::EmptyActionSet, "model has no states");
    }
    if (raw.choices.size() != raw.numStates) {
        throw Error(ErrorCode::BadIndex, "action lists given for " + std::to_string(raw.choices.size()) + " states, expected " + std::to_string(raw.numStates));
    }
    if (raw.initialState >= raw.numStates) {
        throw Error(ErrorCode::BadIndex, "initial state " + std::to_string(raw.initialState) + " out of range");
    }

    SparseMdp mdp;
    mdp.numStates = raw.numStates;
    mdp.initialState = raw.initialState;
    mdp.groupStart.push_back(0);
    mdp.choiceStart.push_back(0);

    for (std::size_t s = 0; s < raw.numStates; ++s) {
        if (raw.choices[s].empty()) {
            throw Error(ErrorCode::EmptyActionSet, "state " + std::to_string(s) + " has no action");
        }
        for (std::size_t a = 0; a < raw.choices[s].size(); ++a) {
            auto distribution = raw.choices[s][a];
            std::stable_sort(distribution.begin(), distribution.end(), [](auto const& l, auto const& r) { return l.first < r.first; });
            Rational sum = 0;
            std::size_t begin = mdp.transitions.size();
            for (auto const& [target, probability] : distribution) {
                if (target >= raw.numStates) {
                    throw Error(ErrorCode::BadIndex, "state " + std::to_string(s) + " action " + std::to_string(a) + ": successor " + std::to_string(target) + " out of range");
                }
                if (probability <= 0) {
                    throw Error(ErrorCode::NonStochastic, "state " + std::to_string(s) + " action " + std::to_string(a) + ": non-positive probability " + toString(probability));
                }
                sum += probability;
                if (mdp.transitions.size() > begin && mdp.transitions.back().target == target) {
                    mdp.transitions.back().probability += probability;
                } else {
                    mdp.transitions.push_back({target, probability});
                }
            }
            if (sum != 1) {
                throw Error(ErrorCode::NonStochastic, "state " + std::to_string(s) + " action " + std::to_string(a) + ": probabilities sum to " + toString(sum));
            }
            mdp.choiceStart.push_back(mdp.transitions.size());
        }
        mdp.groupStart.push_back(mdp.choiceStart.size() - 1);
    }

    mdp.floatProbabilities.reserve(mdp.transitions.size());
    for (auto const& t : mdp.transitions) {
        mdp.floatProbabilities.push_back(toDouble(t.probability));
    }

    if (raw.rewards) {
        if (raw.rewards->size() != raw.numStates) {
            throw Error(ErrorCode::BadIndex, "reward vector has " + std::to_string(raw.rewards->size()) + " entries, expected " + std::to_string(raw.numStates));
        }
        for (std::size_t s = 0; s < raw.numStates; ++s) {
            if ((*raw.rewards)[s] < 0) {
                throw Error(ErrorCode::NegativeReward, "state " + std::to_string(s) + " has negative reward " + toString((*raw.rewards)[s]));
            }
        }
        mdp.rewards = *raw.rewards;
        for (auto& r : mdp.rewards) {
            r.canonicalize();
            mdp.floatRewards.push_back(toDouble(r));
        }
    }

    for (auto const& [name, members] : raw.labels) {
        std::vector<std::size_t> sorted(members);
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        for (auto s : sorted) {
            if (s >= raw.numStates) {
                throw Error(ErrorCode::BadIndex, "label '" + name + "' references state " + std::to_string(s) + " out of range");
            }
        }
        mdp.labels.emplace(name, std::move(sorted));
    }
    return mdp;
}

}  // namespace mdpcheck::model
