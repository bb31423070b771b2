#include "mdpcheck/solver/Topological.h"

#include <cmath>
#include <limits>

#include "Lift.h"
#include "mdpcheck/graph/Decomposition.h"

namespace mdpcheck::solver {

namespace {

/// Smallest double not below `value`.
double roundUp(Rational const& value) {
    double d = toDouble(value);
    if (fromDouble(d) < value) {
        d = std::nextafter(d, std::numeric_limits<double>::infinity());
    }
    return d;
}

struct SccState {
    std::vector<Rational> exact;
    std::vector<bool> isExact;
    std::vector<double> point;
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<std::size_t> choice;

    explicit SccState(std::size_t n) : exact(n), isExact(n, false), point(n, 0.0), lower(n, 0.0), upper(n, 0.0), choice(n, 0) {}

    void setExact(std::size_t s, Rational value) {
        point[s] = toDouble(value);
        lower[s] = point[s];
        upper[s] = roundUp(value);
        exact[s] = std::move(value);
        isExact[s] = true;
    }
    void setPoint(std::size_t s, double value) {
        point[s] = lower[s] = upper[s] = value;
        exact[s] = fromDouble(value);
    }
};

template<typename ValueType>
std::vector<ValueType> restrictTo(std::vector<ValueType> const& values, std::vector<std::size_t> const& states) {
    std::vector<ValueType> result;
    result.reserve(states.size());
    for (auto s : states) {
        result.push_back(values[s]);
    }
    return result;
}

}  // namespace

SolveResult solveTopological(graph::Quotient const& quotient, SolverConfig const& config, Environment const& env, std::optional<model::Policy> const& initial,
                             std::optional<std::vector<Rational>> const& warmLower) {
    auto start = Clock::now();
    auto const systemR = makeSystem(quotient);
    auto const systemF = toFloat(systemR);
    std::size_t const k = systemR.numStates;

    graph::StateSet region(quotient.model.getNumberOfStates());
    for (std::size_t s = 0; s < k; ++s) {
        region.set(s, true);
    }
    auto const sccs = graph::sccTopological(quotient.model, region);

    std::vector<std::size_t> sccOf(k);
    for (std::size_t i = 0; i < sccs.size(); ++i) {
        for (auto s : sccs[i]) {
            sccOf[s] = i;
        }
    }
    // States whose value is read by another component, plus the initial state.
    std::vector<bool> entry(k, false);
    for (std::size_t s = 0; s < k; ++s) {
        for (std::size_t e = systemR.rowStart[systemR.groupStart[s]]; e < systemR.rowStart[systemR.groupStart[s + 1]]; ++e) {
            auto t = systemR.columns[e];
            if (sccOf[t] != sccOf[s]) {
                entry[t] = true;
            }
        }
    }
    if (quotient.model.getInitialState() < k) {
        entry[quotient.model.getInitialState()] = true;
    }

    SccState state(k);
    Soundness soundness = Soundness::Exact;
    bool certified = true;
    std::size_t iterations = 0;
    std::size_t calls = 0;
    double const epsilon = config.stop.epsilon;

    for (auto const& scc : sccs) {
        bool selfLoop = false;
        bool exitsExact = true;
        bool exitsTight = true;
        for (auto s : scc) {
            for (std::size_t e = systemR.rowStart[systemR.groupStart[s]]; e < systemR.rowStart[systemR.groupStart[s + 1]]; ++e) {
                auto t = systemR.columns[e];
                if (sccOf[t] == sccOf[s]) {
                    selfLoop = true;
                } else {
                    exitsExact = exitsExact && state.isExact[t];
                    exitsTight = exitsTight && state.lower[t] == state.upper[t];
                }
            }
        }

        if (scc.size() == 1 && !selfLoop) {
            std::size_t s = scc.front();
            std::size_t const begin = systemR.groupStart[s];
            if (exitsExact) {
                Rational best = systemR.choiceValue(begin, state.exact);
                std::size_t bestChoice = begin;
                for (std::size_t c = begin + 1; c < systemR.groupStart[s + 1]; ++c) {
                    Rational value = systemR.choiceValue(c, state.exact);
                    if (systemR.better(value, best)) {
                        best = std::move(value);
                        bestChoice = c;
                    }
                }
                state.setExact(s, std::move(best));
                state.choice[s] = bestChoice - begin;
            } else {
                double best = systemF.choiceValue(begin, state.point);
                double lower = systemF.choiceValue(begin, state.lower);
                double upper = systemF.choiceValue(begin, state.upper);
                std::size_t bestChoice = begin;
                for (std::size_t c = begin + 1; c < systemF.groupStart[s + 1]; ++c) {
                    double value = systemF.choiceValue(c, state.point);
                    if (systemF.better(value, best)) {
                        best = value;
                        bestChoice = c;
                    }
                    lower = systemF.minimizing() ? std::min(lower, systemF.choiceValue(c, state.lower)) : std::max(lower, systemF.choiceValue(c, state.lower));
                    upper = systemF.minimizing() ? std::min(upper, systemF.choiceValue(c, state.upper)) : std::max(upper, systemF.choiceValue(c, state.upper));
                }
                state.setPoint(s, best);
                state.lower[s] = lower;
                state.upper[s] = upper;
                state.choice[s] = bestChoice - begin;
                certified = certified && upper - lower <= epsilon * lower;
            }
            continue;
        }

        ++calls;
        std::string const context = "component of quotient state " + std::to_string(scc.front()) + ": ";
        try {
            std::vector<std::size_t> localChoice;
            switch (config.algorithm) {
                case Algorithm::ValueIteration: {
                    auto sub = restrictSystem(systemF, scc, state.point);
                    auto outcome = valueIterate(sub, std::vector<double>(scc.size(), 0.0), config.stop, env);
                    std::vector<double> backup;
                    bellman(sub, outcome.values, backup, &localChoice);
                    for (std::size_t i = 0; i < scc.size(); ++i) {
                        state.setPoint(scc[i], outcome.values[i]);
                    }
                    iterations += outcome.iterations;
                    soundness = weakest(soundness, Soundness::Unsound);
                    break;
                }
                case Algorithm::OptimisticValueIteration: {
                    auto subLower = restrictSystem(systemF, scc, state.lower);
                    auto low = optimisticValueIterate(subLower, epsilon, config.ovi, env);
                    iterations += low.iterations;
                    BoundedOutcome high = low;
                    if (!exitsTight) {
                        auto subUpper = restrictSystem(systemF, scc, state.upper);
                        high = optimisticValueIterate(subUpper, epsilon, config.ovi, env);
                        iterations += high.iterations;
                    }
                    std::vector<double> backup;
                    bellman(subLower, low.lower, backup, &localChoice);
                    for (std::size_t i = 0; i < scc.size(); ++i) {
                        auto s = scc[i];
                        state.setPoint(s, low.lower[i]);
                        state.upper[s] = high.upper[i];
                        certified = certified && state.upper[s] - state.lower[s] <= epsilon * state.lower[s];
                    }
                    soundness = weakest(soundness, Soundness::Sound);
                    break;
                }
                case Algorithm::PolicyIteration: {
                    std::vector<std::size_t> policy(scc.size(), 0);
                    if (initial) {
                        policy = restrictTo(initial->choices, scc);
                    }
                    if (config.evaluator.kind == EvaluatorKind::ExactElimination) {
                        auto sub = restrictSystem(systemR, scc, state.exact);
                        auto outcome = policyIterateExact(sub, std::move(policy), config.pi, env);
                        for (std::size_t i = 0; i < scc.size(); ++i) {
                            state.setExact(scc[i], outcome.values[i]);
                            state.isExact[scc[i]] = exitsExact;
                        }
                        localChoice = std::move(outcome.policy);
                        iterations += outcome.iterations;
                        soundness = weakest(soundness, exitsExact ? Soundness::Exact : Soundness::Unsound);
                    } else {
                        auto sub = restrictSystem(systemF, scc, state.point);
                        auto outcome = policyIterateFloat(sub, config.evaluator, std::move(policy), config.pi, env);
                        for (std::size_t i = 0; i < scc.size(); ++i) {
                            state.setPoint(scc[i], outcome.values[i]);
                        }
                        localChoice = std::move(outcome.policy);
                        iterations += outcome.iterations;
                        soundness = weakest(soundness, Soundness::Unsound);
                    }
                    break;
                }
                case Algorithm::LinearProgramming: {
                    LpOptions options;
                    options.objective = config.lpObjective;
                    options.uniqueActionEquality = config.lpUniqueActionEquality;
                    std::vector<std::size_t> objectiveStates;
                    for (std::size_t i = 0; i < scc.size(); ++i) {
                        if (entry[scc[i]]) {
                            objectiveStates.push_back(i);
                        }
                    }
                    std::optional<std::vector<Rational>> warm;
                    if (warmLower) {
                        warm = restrictTo(*warmLower, scc);
                    }
                    if (config.lpField == LpField::Rational) {
                        auto sub = restrictSystem(systemR, scc, state.exact);
                        auto solution = simplexSolve(buildLp(sub, options, objectiveStates, warm), config.simplex, env);
                        std::vector<Rational> backup;
                        bellman(sub, solution.values, backup, &localChoice);
                        for (std::size_t i = 0; i < scc.size(); ++i) {
                            state.setExact(scc[i], solution.values[i]);
                            state.isExact[scc[i]] = exitsExact;
                        }
                        iterations += solution.iterations;
                        soundness = weakest(soundness, exitsExact ? Soundness::Exact : Soundness::Unsound);
                    } else {
                        auto sub = restrictSystem(systemF, scc, state.point);
                        std::optional<std::vector<double>> warmFloat;
                        if (warm) {
                            warmFloat.emplace();
                            for (auto const& v : *warm) {
                                warmFloat->push_back(toDouble(v));
                            }
                        }
                        auto solution = simplexSolve(buildLp(sub, options, objectiveStates, warmFloat), config.simplex, env);
                        std::vector<double> backup;
                        bellman(sub, solution.values, backup, &localChoice);
                        for (std::size_t i = 0; i < scc.size(); ++i) {
                            state.setPoint(scc[i], solution.values[i]);
                        }
                        iterations += solution.iterations;
                        soundness = weakest(soundness, Soundness::Unsound);
                    }
                    break;
                }
            }
            for (std::size_t i = 0; i < scc.size(); ++i) {
                state.choice[scc[i]] = localChoice[i];
            }
        } catch (IterationError const& e) {
            throw IterationError(e.code(), context + e.what(), iterations + e.iterations());
        } catch (Error const& e) {
            throw Error(e.code(), context + e.what());
        }
    }

    SolveResult result;
    result.soundness = soundness;
    result.values = detail::quotientValues(quotient, state.point);
    if (soundness == Soundness::Exact) {
        result.exactValues = detail::quotientValues(quotient, state.exact);
    }
    if (config.algorithm == Algorithm::OptimisticValueIteration) {
        result.lower = detail::quotientValues(quotient, state.lower);
        result.upper = detail::quotientValues(quotient, state.upper);
        result.epsilonCertified = certified;
    }
    result.policy = detail::quotientPolicy(quotient, state.choice);
    result.iterations = iterations;
    result.backendCalls = calls;
    result.solveSeconds = std::chrono::duration<double>(Clock::now() - start).count();
    return result;
}

}  // namespace mdpcheck::solver
