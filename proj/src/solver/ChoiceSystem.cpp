#include "mdpcheck/solver/ChoiceSystem.h"

#include <cassert>
#include <limits>

namespace mdpcheck::solver {

ChoiceSystem<Rational> makeSystem(graph::Quotient const& quotient) {
    auto const& mdp = quotient.model;
    std::size_t const k = quotient.numberOfMaybeStates();
    ChoiceSystem<Rational> system;
    system.numStates = k;
    system.direction = quotient.objective.direction;
    bool const reach = quotient.objective.isReachability();
    if (reach) {
        system.valueBound = Rational(1);
    }
    for (std::size_t s = 0; s < k; ++s) {
        for (std::size_t a = 0; a < mdp.getNumberOfChoices(s); ++a) {
            Rational constant = reach ? Rational(0) : mdp.getReward(s);
            bool leaks = false;
            for (auto const& t : mdp.getTransitions(s, a)) {
                if (t.target < k) {
                    system.columns.push_back(t.target);
                    system.probabilities.push_back(t.probability);
                } else {
                    leaks = true;
                    if (reach && t.target == quotient.target) {
                        constant += t.probability;
                    }
                }
            }
            system.rowStart.push_back(system.columns.size());
            system.constants.push_back(std::move(constant));
            system.leaks.push_back(leaks);
            system.action.push_back(a);
        }
        system.groupStart.push_back(system.constants.size());
    }
    return system;
}

ChoiceSystem<double> toFloat(ChoiceSystem<Rational> const& system) {
    ChoiceSystem<double> result;
    result.numStates = system.numStates;
    result.direction = system.direction;
    result.groupStart = system.groupStart;
    result.rowStart = system.rowStart;
    result.columns = system.columns;
    result.leaks = system.leaks;
    result.action = system.action;
    result.probabilities.reserve(system.probabilities.size());
    for (auto const& p : system.probabilities) {
        result.probabilities.push_back(toDouble(p));
    }
    result.constants.reserve(system.constants.size());
    for (auto const& c : system.constants) {
        result.constants.push_back(toDouble(c));
    }
    if (system.valueBound) {
        result.valueBound = toDouble(*system.valueBound);
    }
    return result;
}

template<typename ValueType>
ChoiceSystem<ValueType> restrictSystem(ChoiceSystem<ValueType> const& system, std::vector<std::size_t> const& states, std::vector<ValueType> const& known) {
    constexpr std::size_t outside = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> local(system.numStates, outside);
    for (std::size_t i = 0; i < states.size(); ++i) {
        local[states[i]] = i;
    }
    ChoiceSystem<ValueType> result;
    result.numStates = states.size();
    result.direction = system.direction;
    result.valueBound = system.valueBound;
    for (auto s : states) {
        for (std::size_t c = system.groupStart[s]; c < system.groupStart[s + 1]; ++c) {
            ValueType constant = system.constants[c];
            bool leaks = system.leaks[c];
            for (std::size_t e = system.rowStart[c]; e < system.rowStart[c + 1]; ++e) {
                auto t = system.columns[e];
                if (local[t] != outside) {
                    result.columns.push_back(local[t]);
                    result.probabilities.push_back(system.probabilities[e]);
                } else {
                    constant += system.probabilities[e] * known[t];
                    leaks = true;
                }
            }
            result.rowStart.push_back(result.columns.size());
            result.constants.push_back(std::move(constant));
            result.leaks.push_back(leaks);
            result.action.push_back(system.action[c]);
        }
        result.groupStart.push_back(result.constants.size());
    }
    return result;
}

template<typename ValueType>
void bellman(ChoiceSystem<ValueType> const& system, std::vector<ValueType> const& x, std::vector<ValueType>& out, std::vector<std::size_t>* choice) {
    assert(x.size() == system.numStates);
    out.resize(system.numStates);
    if (choice) {
        choice->resize(system.numStates);
    }
    for (std::size_t s = 0; s < system.numStates; ++s) {
        std::size_t begin = system.groupStart[s];
        ValueType best = system.choiceValue(begin, x);
        std::size_t bestChoice = begin;
        for (std::size_t c = begin + 1; c < system.groupStart[s + 1]; ++c) {
            ValueType value = system.choiceValue(c, x);
            if (system.better(value, best)) {
                best = std::move(value);
                bestChoice = c;
            }
        }
        out[s] = std::move(best);
        if (choice) {
            (*choice)[s] = bestChoice - begin;
        }
    }
}

template ChoiceSystem<Rational> restrictSystem(ChoiceSystem<Rational> const&, std::vector<std::size_t> const&, std::vector<Rational> const&);
template ChoiceSystem<double> restrictSystem(ChoiceSystem<double> const&, std::vector<std::size_t> const&, std::vector<double> const&);
template void bellman(ChoiceSystem<Rational> const&, std::vector<Rational> const&, std::vector<Rational>&, std::vector<std::size_t>*);
template void bellman(ChoiceSystem<double> const&, std::vector<double> const&, std::vector<double>&, std::vector<std::size_t>*);

}  // namespace mdpcheck::solver
