#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mdpcheck/Rational.h"
#include "mdpcheck/graph/StateSet.h"

namespace mdpcheck::model {

/// Unvalidated model description, as produced by parsers and generators.
struct RawMdp {
    using Distribution = std::vector<std::pair<std::size_t, Rational>>;

    std::size_t numStates = 0;
    std::size_t initialState = 0;
    /// choices[s] lists the actions of state s; each action is a distribution.
    std::vector<std::vector<Distribution>> choices;
    std::optional<std::vector<Rational>> rewards;
    std::map<std::string, std::vector<std::size_t>> labels;
};

struct Transition {
    std::size_t target;
    Rational probability;

    bool operator==(Transition const&) const = default;
};

/// Immutable MDP in compressed row-grouped form. Actions are identified by
/// their position within the state's action list. Probabilities are exact;
/// a float view (rounded once, toward zero) is kept alongside.
class SparseMdp {
   public:
    SparseMdp() = default;

    std::size_t getNumberOfStates() const {
        return numStates;
    }
    std::size_t getNumberOfChoices() const {
        return choiceStart.empty() ? 0 : choiceStart.size() - 1;
    }
    std::size_t getNumberOfChoices(std::size_t state) const {
        return groupStart[state + 1] - groupStart[state];
    }
    /// Global index of the first action of `state`.
    std::size_t getChoiceOffset(std::size_t state) const {
        return groupStart[state];
    }
    std::size_t getChoiceIndex(std::size_t state, std::size_t action) const {
        return groupStart[state] + action;
    }

    std::span<Transition const> getTransitions(std::size_t choice) const {
        return {transitions.data() + choiceStart[choice], choiceStart[choice + 1] - choiceStart[choice]};
    }
    std::span<Transition const> getTransitions(std::size_t state, std::size_t action) const {
        return getTransitions(getChoiceIndex(state, action));
    }
    std::span<double const> getFloatProbabilities(std::size_t choice) const {
        return {floatProbabilities.data() + choiceStart[choice], choiceStart[choice + 1] - choiceStart[choice]};
    }

    bool hasRewards() const {
        return !rewards.empty();
    }
    Rational const& getReward(std::size_t state) const {
        return rewards[state];
    }
    double getFloatReward(std::size_t state) const {
        return floatRewards[state];
    }

    std::size_t getInitialState() const {
        return initialState;
    }
    std::map<std::string, std::vector<std::size_t>> const& getLabels() const {
        return labels;
    }
    bool hasLabel(std::string const& name) const {
        return labels.count(name) > 0;
    }
    graph::StateSet getStates(std::string const& label) const;

    /// True if every state has exactly one action.
    bool isDeterministic() const;

    RawMdp toRaw() const;

    /// Structural equality: same states, actions in the same order, same exact
    /// distributions, rewards, labels, and initial state.
    bool operator==(SparseMdp const& other) const;

   private:
    friend SparseMdp buildMdp(RawMdp const& raw);

    std::size_t numStates = 0;
    std::size_t initialState = 0;
    std::vector<std::size_t> groupStart;
    std::vector<std::size_t> choiceStart;
    std::vector<Transition> transitions;
    std::vector<double> floatProbabilities;
    std::vector<Rational> rewards;
    std::vector<double> floatRewards;
    std::map<std::string, std::vector<std::size_t>> labels;
};

/// Validates `raw` and builds the model. Successors within a distribution are
/// sorted and duplicates merged; action order is preserved.
/// Errors: NonStochastic, EmptyActionSet, BadIndex, NegativeReward.
SparseMdp buildMdp(RawMdp const& raw);

}  // namespace mdpcheck::model
