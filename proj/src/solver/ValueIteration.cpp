#include "mdpcheck/solver/ValueIteration.h"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "Lift.h"
#include "mdpcheck/Errors.h"

namespace mdpcheck::solver {

template<typename ValueType>
model::ValueVector<ValueType> bellmanApply(model::SparseMdp const& mdp, model::ValueVector<ValueType> const& values, model::Objective const& objective) {
    std::size_t const n = mdp.getNumberOfStates();
    if (values.size() != n) {
        throw Error(ErrorCode::DimensionMismatch, "value vector has " + std::to_string(values.size()) + " entries, model has " + std::to_string(n) + " states");
    }
    objective.validateFor(mdp);
    bool const reach = objective.isReachability();
    bool const minimizing = model::minimize(objective.direction);

    auto valueOf = [&](std::size_t t) -> ValueType {
        if (reach && objective.target[t]) {
            return ValueType(1);
        }
        return values[t];
    };

    model::ValueVector<ValueType> result(n);
    for (std::size_t s = 0; s < n; ++s) {
        if (reach && objective.target[s]) {
            result.set(s, ValueType(1));
            continue;
        }
        bool bestInfinite = false;
        ValueType best(0);
        for (std::size_t a = 0; a < mdp.getNumberOfChoices(s); ++a) {
            bool infinite = false;
            ValueType sum(0);
            for (auto const& t : mdp.getTransitions(s, a)) {
                if (values.isInfinite(t.target) && !(reach && objective.target[t.target])) {
                    infinite = true;
                    break;
                }
                if constexpr (std::is_same_v<ValueType, double>) {
                    sum += toDouble(t.probability) * valueOf(t.target);
                } else {
                    sum += t.probability * valueOf(t.target);
                }
            }
            if (!reach) {
                if constexpr (std::is_same_v<ValueType, double>) {
                    sum += mdp.getFloatReward(s);
                } else {
                    sum += mdp.getReward(s);
                }
            }
            bool improves;
            if (a == 0) {
                improves = true;
            } else if (minimizing) {
                improves = !infinite && (bestInfinite || sum < best);
            } else {
                improves = !bestInfinite && (infinite || sum > best);
            }
            if (improves) {
                best = sum;
                bestInfinite = infinite;
            }
        }
        if (bestInfinite) {
            result.setInfinite(s);
        } else {
            result.set(s, best);
        }
    }
    return result;
}

template model::ValueVector<double> bellmanApply(model::SparseMdp const&, model::ValueVector<double> const&, model::Objective const&);
template model::ValueVector<Rational> bellmanApply(model::SparseMdp const&, model::ValueVector<Rational> const&, model::Objective const&);

IterationOutcome valueIterate(ChoiceSystem<double> const& system, std::vector<double> start, StoppingCriterion const& stop, Environment const& env) {
    stop.validate();
    IterationOutcome outcome;
    outcome.values = std::move(start);
    if (system.numStates == 0) {
        return outcome;
    }
    std::vector<double> next;
    while (true) {
        if (stop.maxIterations && outcome.iterations >= *stop.maxIterations) {
            throw IterationError(ErrorCode::IterationLimit, "value iteration did not converge within " + std::to_string(outcome.iterations) + " iterations",
                                 outcome.iterations);
        }
        if ((outcome.iterations & 0x3ff) == 0) {
            env.check(outcome.iterations);
        }
        bellman(system, outcome.values, next);
        ++outcome.iterations;
        bool done = true;
        for (std::size_t s = 0; s < system.numStates && done; ++s) {
            done = stop.converged(outcome.values[s], next[s]);
        }
        outcome.values.swap(next);
        if (done) {
            return outcome;
        }
    }
}

namespace {

/// Relative widening of certified bounds that covers floating-point error in
/// the Bellman backups.
constexpr double roundingMargin = 1e-12;

}  // namespace

BoundedOutcome optimisticValueIterate(ChoiceSystem<double> const& system, double epsilon, OviOptions const& options, Environment const& env) {
    if (!(epsilon > 0)) {
        throw Error(ErrorCode::BadParameter, "OVI needs a positive epsilon");
    }
    std::size_t const n = system.numStates;
    BoundedOutcome outcome;
    outcome.lower.assign(n, 0.0);
    outcome.upper.assign(n, 0.0);
    if (n == 0) {
        return outcome;
    }

    double inner = epsilon / 2;
    std::size_t convergenceIterations = 0;
    std::vector<double> nextLower;
    std::vector<double> nextUpper;
    for (std::size_t round = 0; round < options.maxRounds; ++round) {
        StoppingCriterion stop{Precision::Relative, inner, options.maxIterations - std::min(options.maxIterations, outcome.iterations)};
        auto phase = valueIterate(system, std::move(outcome.lower), stop, env);
        outcome.lower = std::move(phase.values);
        outcome.iterations += phase.iterations;
        convergenceIterations += phase.iterations;

        for (std::size_t s = 0; s < n; ++s) {
            outcome.upper[s] = outcome.lower[s] * (1 + epsilon);
            if (system.valueBound) {
                outcome.upper[s] = std::min(outcome.upper[s], *system.valueBound);
            }
        }

        auto budget = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(options.verificationFactor * static_cast<double>(convergenceIterations))));
        for (std::size_t i = 0; i < budget; ++i) {
            if (outcome.iterations >= options.maxIterations) {
                throw IterationError(ErrorCode::IterationLimit, "OVI exceeded its iteration budget", outcome.iterations);
            }
            if ((outcome.iterations & 0x3ff) == 0) {
                env.check(outcome.iterations);
            }
            bellman(system, outcome.lower, nextLower);
            bellman(system, outcome.upper, nextUpper);
            ++outcome.iterations;
            outcome.lower.swap(nextLower);

            bool allDown = true;
            bool allUp = true;
            for (std::size_t s = 0; s < n; ++s) {
                allDown = allDown && nextUpper[s] <= outcome.upper[s];
                allUp = allUp && nextUpper[s] >= outcome.upper[s];
                nextUpper[s] = std::min(nextUpper[s], outcome.upper[s]);
            }
            outcome.upper.swap(nextUpper);
            if (allDown) {
                bool tight = true;
                for (std::size_t s = 0; s < n && tight; ++s) {
                    // Iterates may cross by rounding once both sides are exact.
                    double const lower = std::min(outcome.lower[s], outcome.upper[s]) * (1 - roundingMargin);
                    double const upper = outcome.upper[s] * (1 + roundingMargin);
                    tight = upper - lower <= epsilon * lower;
                }
                if (tight) {
                    for (std::size_t s = 0; s < n; ++s) {
                        outcome.lower[s] = std::min(outcome.lower[s], outcome.upper[s]) * (1 - roundingMargin);
                        outcome.upper[s] *= 1 + roundingMargin;
                        if (system.valueBound) {
                            outcome.upper[s] = std::min(outcome.upper[s], *system.valueBound);
                        }
                    }
                    return outcome;
                }
            } else if (allUp) {
                break;
            }
        }
        inner /= 2;
    }
    throw IterationError(ErrorCode::IterationLimit, "OVI verification failed in " + std::to_string(options.maxRounds) + " rounds", outcome.iterations);
}

SolveResult solveVi(graph::Quotient const& quotient, StoppingCriterion const& stop, Environment const& env) {
    auto start = Clock::now();
    auto system = toFloat(makeSystem(quotient));
    auto outcome = valueIterate(system, std::vector<double>(system.numStates, 0.0), stop, env);
    std::vector<std::size_t> choice;
    std::vector<double> ignored;
    bellman(system, outcome.values, ignored, &choice);

    SolveResult result;
    result.soundness = Soundness::Unsound;
    result.values = detail::quotientValues(quotient, outcome.values);
    result.policy = detail::quotientPolicy(quotient, choice);
    result.iterations = outcome.iterations;
    result.backendCalls = system.numStates > 0 ? 1 : 0;
    result.solveSeconds = std::chrono::duration<double>(Clock::now() - start).count();
    return result;
}

SolveResult solveOvi(graph::Quotient const& quotient, double epsilon, OviOptions const& options, Environment const& env) {
    auto start = Clock::now();
    auto system = toFloat(makeSystem(quotient));
    auto outcome = optimisticValueIterate(system, epsilon, options, env);
    std::vector<std::size_t> choice;
    std::vector<double> ignored;
    bellman(system, outcome.lower, ignored, &choice);

    SolveResult result;
    result.soundness = Soundness::Sound;
    result.values = detail::quotientValues(quotient, outcome.lower);
    result.lower = result.values;
    result.upper = detail::quotientValues(quotient, outcome.upper);
    result.epsilonCertified = true;
    result.policy = detail::quotientPolicy(quotient, choice);
    result.iterations = outcome.iterations;
    result.backendCalls = system.numStates > 0 ? 1 : 0;
    result.solveSeconds = std::chrono::duration<double>(Clock::now() - start).count();
    return result;
}

model::ValueVector<double> viEstimates(graph::Quotient const& quotient, std::size_t iterations) {
    auto system = toFloat(makeSystem(quotient));
    return detail::quotientValues(quotient, valueEstimates(system, iterations));
}

}  // namespace mdpcheck::solver
