#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mdpcheck/Rational.h"
#include "mdpcheck/graph/Quotient.h"
#include "mdpcheck/model/Objective.h"

namespace mdpcheck::solver {

/// The fixpoint system x_s = opt_a ( constant(a) + sum_t P(a, t) x_t ) over the
/// undecided states of a preprocessed model. Transitions to the target, the
/// sink, and states solved elsewhere are folded into the constants.
template<typename ValueType>
struct ChoiceSystem {
    std::size_t numStates = 0;
    model::OptimizationDirection direction = model::OptimizationDirection::Maximize;
    /// Choices of state s are [groupStart[s], groupStart[s + 1]).
    std::vector<std::size_t> groupStart{0};
    /// Entries of choice c are [rowStart[c], rowStart[c + 1]).
    std::vector<std::size_t> rowStart{0};
    std::vector<std::size_t> columns;
    std::vector<ValueType> probabilities;
    std::vector<ValueType> constants;
    /// Whether choice c moves probability mass out of the system.
    std::vector<bool> leaks;
    /// Action index of choice c within its quotient state.
    std::vector<std::size_t> action;
    /// Bound on all values (1 for reachability); none for rewards.
    std::optional<ValueType> valueBound;

    std::size_t numChoices() const {
        return constants.size();
    }
    std::size_t choicesOf(std::size_t state) const {
        return groupStart[state + 1] - groupStart[state];
    }
    bool minimizing() const {
        return model::minimize(direction);
    }

    /// constant(c) + sum P(c, t) x_t
    ValueType choiceValue(std::size_t choice, std::vector<ValueType> const& x) const {
        ValueType result = constants[choice];
        for (std::size_t e = rowStart[choice]; e < rowStart[choice + 1]; ++e) {
            result += probabilities[e] * x[columns[e]];
        }
        return result;
    }

    /// True if `candidate` is strictly better than `incumbent` in this
    /// system's optimisation direction.
    bool better(ValueType const& candidate, ValueType const& incumbent) const {
        return minimizing() ? candidate < incumbent : candidate > incumbent;
    }
};

/// System over the maybe states [0, target) of a quotient.
ChoiceSystem<Rational> makeSystem(graph::Quotient const& quotient);

ChoiceSystem<double> toFloat(ChoiceSystem<Rational> const& system);

/// Restriction of `system` to `states`, with the other states' values
/// substituted as constants. `known` must hold values for every state
/// outside `states` that is a successor of one of them.
template<typename ValueType>
ChoiceSystem<ValueType> restrictSystem(ChoiceSystem<ValueType> const& system, std::vector<std::size_t> const& states, std::vector<ValueType> const& known);

/// One Bellman backup: out[s] = opt over choices of s. If `choice` is given,
/// also records the chosen local action, ties to the lowest index.
template<typename ValueType>
void bellman(ChoiceSystem<ValueType> const& system, std::vector<ValueType> const& x, std::vector<ValueType>& out, std::vector<std::size_t>* choice = nullptr);

}  // namespace mdpcheck::solver
