#include "mdpcheck/solver/PolicyIteration.h"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <map>

#include "Lift.h"
#include "mdpcheck/solver/Solve.h"

namespace mdpcheck::solver {

namespace {

template<typename ValueType>
std::size_t globalChoice(ChoiceSystem<ValueType> const& system, std::vector<std::size_t> const& policy, std::size_t s) {
    if (policy[s] >= system.choicesOf(s)) {
        throw Error(ErrorCode::BadPolicyIndex, "policy chooses action " + std::to_string(policy[s]) + " at state " + std::to_string(s));
    }
    return system.groupStart[s] + policy[s];
}

template<typename ValueType>
void checkPolicy(ChoiceSystem<ValueType> const& system, std::vector<std::size_t> const& policy) {
    if (policy.size() != system.numStates) {
        throw Error(ErrorCode::DimensionMismatch, "policy covers " + std::to_string(policy.size()) + " states, system has " + std::to_string(system.numStates));
    }
    for (std::size_t s = 0; s < system.numStates; ++s) {
        globalChoice(system, policy, s);
    }
}

/// States that leave the system with positive probability under `policy`.
template<typename ValueType>
std::vector<bool> leavingStates(ChoiceSystem<ValueType> const& system, std::vector<std::size_t> const& policy) {
    std::size_t const n = system.numStates;
    std::vector<std::vector<std::size_t>> predecessors(n);
    std::vector<std::size_t> queue;
    std::vector<bool> good(n, false);
    for (std::size_t s = 0; s < n; ++s) {
        std::size_t c = system.groupStart[s] + policy[s];
        if (system.leaks[c]) {
            good[s] = true;
            queue.push_back(s);
        }
        for (std::size_t e = system.rowStart[c]; e < system.rowStart[c + 1]; ++e) {
            predecessors[system.columns[e]].push_back(s);
        }
    }
    while (!queue.empty()) {
        std::size_t t = queue.back();
        queue.pop_back();
        for (auto s : predecessors[t]) {
            if (!good[s]) {
                good[s] = true;
                queue.push_back(s);
            }
        }
    }
    return good;
}

/// Best choice by backed-up value; ties to the lowest index.
template<typename ValueType>
std::pair<std::size_t, ValueType> bestChoice(ChoiceSystem<ValueType> const& system, std::size_t s, std::vector<ValueType> const& x) {
    std::size_t begin = system.groupStart[s];
    std::size_t best = begin;
    ValueType bestValue = system.choiceValue(begin, x);
    for (std::size_t c = begin + 1; c < system.groupStart[s + 1]; ++c) {
        ValueType value = system.choiceValue(c, x);
        if (system.better(value, bestValue)) {
            best = c;
            bestValue = std::move(value);
        }
    }
    return {best - begin, bestValue};
}

template<typename ValueType, typename Evaluate, typename Improves>
PiOutcome<ValueType> policyIterate(ChoiceSystem<ValueType> const& system, std::vector<std::size_t> policy, PiOptions const& options, Environment const& env,
                                   Evaluate evaluate, Improves improves) {
    checkPolicy(system, policy);
    makeProper(system, policy);
    PiOutcome<ValueType> outcome;
    while (true) {
        if (outcome.iterations >= options.maxIterations) {
            throw IterationError(ErrorCode::IterationLimit, "policy iteration exceeded " + std::to_string(options.maxIterations) + " iterations", outcome.iterations);
        }
        env.check(outcome.iterations);
        outcome.values = evaluate(policy);
        ++outcome.iterations;
        if (options.recordTrace) {
            outcome.trace.push_back(outcome.values);
        }
        std::size_t switches = 0;
        for (std::size_t s = 0; s < system.numStates; ++s) {
            auto [candidate, candidateValue] = bestChoice(system, s, outcome.values);
            if (candidate == policy[s]) {
                continue;
            }
            ValueType current = system.choiceValue(system.groupStart[s] + policy[s], outcome.values);
            if (improves(candidateValue, current)) {
                policy[s] = candidate;
                ++switches;
            }
        }
        outcome.totalSwitches += switches;
        if (switches == 0) {
            outcome.policy = std::move(policy);
            return outcome;
        }
    }
}

}  // namespace

template<typename ValueType>
void makeProper(ChoiceSystem<ValueType> const& system, std::vector<std::size_t>& policy) {
    while (true) {
        auto good = leavingStates(system, policy);
        bool changed = false;
        for (std::size_t s = 0; s < system.numStates; ++s) {
            if (good[s]) {
                continue;
            }
            for (std::size_t c = system.groupStart[s]; c < system.groupStart[s + 1]; ++c) {
                bool reaches = system.leaks[c];
                for (std::size_t e = system.rowStart[c]; e < system.rowStart[c + 1] && !reaches; ++e) {
                    reaches = good[system.columns[e]];
                }
                if (reaches) {
                    policy[s] = c - system.groupStart[s];
                    changed = true;
                    break;
                }
            }
        }
        if (!changed) {
            return;
        }
    }
}

template void makeProper(ChoiceSystem<Rational> const&, std::vector<std::size_t>&);
template void makeProper(ChoiceSystem<double> const&, std::vector<std::size_t>&);

std::vector<Rational> solveExact(ChoiceSystem<Rational> const& system, std::vector<std::size_t> const& policy, Environment const& env) {
    checkPolicy(system, policy);
    std::size_t const n = system.numStates;
    // Sparse rows of I - P.
    std::vector<std::vector<std::pair<std::size_t, Rational>>> rows(n);
    std::vector<Rational> rhs(n);
    for (std::size_t s = 0; s < n; ++s) {
        std::size_t c = system.groupStart[s] + policy[s];
        std::map<std::size_t, Rational> entries;
        entries[s] = 1;
        for (std::size_t e = system.rowStart[c]; e < system.rowStart[c + 1]; ++e) {
            entries[system.columns[e]] -= system.probabilities[e];
        }
        for (auto& [col, value] : entries) {
            if (sgn(value) != 0) {
                rows[s].emplace_back(col, std::move(value));
            }
        }
        rhs[s] = system.constants[c];
    }

    // Forward elimination in ascending order with the first nonzero pivot.
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) {
        order[i] = i;
    }
    auto entryOf = [](std::vector<std::pair<std::size_t, Rational>> const& row, std::size_t col) -> Rational const* {
        auto it = std::lower_bound(row.begin(), row.end(), col, [](auto const& entry, std::size_t c) { return entry.first < c; });
        return it != row.end() && it->first == col ? &it->second : nullptr;
    };
    for (std::size_t k = 0; k < n; ++k) {
        if ((k & 0x3f) == 0) {
            env.check(k);
        }
        std::size_t pivotRow = n;
        for (std::size_t i = k; i < n; ++i) {
            if (entryOf(rows[order[i]], k)) {
                pivotRow = i;
                break;
            }
        }
        if (pivotRow == n) {
            throw Error(ErrorCode::SingularSystem, "policy chain is singular at state " + std::to_string(k));
        }
        std::swap(order[k], order[pivotRow]);
        auto const& pivot = rows[order[k]];
        Rational pivotValue = *entryOf(pivot, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            auto& row = rows[order[i]];
            Rational const* target = entryOf(row, k);
            if (!target) {
                continue;
            }
            Rational factor = *target / pivotValue;
            std::vector<std::pair<std::size_t, Rational>> merged;
            merged.reserve(row.size() + pivot.size());
            auto a = row.begin();
            auto b = pivot.begin();
            while (a != row.end() || b != pivot.end()) {
                if (b == pivot.end() || (a != row.end() && a->first < b->first)) {
                    merged.push_back(std::move(*a++));
                } else if (a == row.end() || b->first < a->first) {
                    merged.emplace_back(b->first, -factor * b->second);
                    ++b;
                } else {
                    Rational value = a->second - factor * b->second;
                    if (sgn(value) != 0) {
                        merged.emplace_back(a->first, std::move(value));
                    }
                    ++a;
                    ++b;
                }
            }
            row = std::move(merged);
            rhs[order[i]] -= factor * rhs[order[k]];
        }
    }

    std::vector<Rational> x(n);
    for (std::size_t k = n; k-- > 0;) {
        auto const& row = rows[order[k]];
        Rational value = rhs[order[k]];
        Rational diagonal;
        for (auto const& [col, coefficient] : row) {
            if (col == k) {
                diagonal = coefficient;
            } else if (col > k) {
                value -= coefficient * x[col];
            }
        }
        x[k] = value / diagonal;
    }
    return x;
}

std::vector<double> solveFloat(ChoiceSystem<double> const& system, std::vector<std::size_t> const& policy) {
    checkPolicy(system, policy);
    std::size_t const n = system.numStates;
    if (n == 0) {
        return {};
    }
    std::vector<Eigen::Triplet<double>> triplets;
    Eigen::VectorXd rhs(static_cast<Eigen::Index>(n));
    for (std::size_t s = 0; s < n; ++s) {
        std::size_t c = system.groupStart[s] + policy[s];
        auto row = static_cast<Eigen::Index>(s);
        triplets.emplace_back(row, row, 1.0);
        for (std::size_t e = system.rowStart[c]; e < system.rowStart[c + 1]; ++e) {
            triplets.emplace_back(row, static_cast<Eigen::Index>(system.columns[e]), -system.probabilities[e]);
        }
        rhs[row] = system.constants[c];
    }
    Eigen::SparseMatrix<double> matrix(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    matrix.setFromTriplets(triplets.begin(), triplets.end());
    matrix.makeCompressed();
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(matrix);
    if (lu.info() != Eigen::Success) {
        throw Error(ErrorCode::SingularSystem, "sparse LU failed on the policy chain");
    }
    Eigen::VectorXd solution = lu.solve(rhs);
    if (lu.info() != Eigen::Success) {
        throw Error(ErrorCode::SingularSystem, "sparse LU solve failed on the policy chain");
    }
    return std::vector<double>(solution.data(), solution.data() + n);
}

std::vector<double> solveIterative(ChoiceSystem<double> const& system, std::vector<std::size_t> const& policy, StoppingCriterion const& stop, Environment const& env) {
    checkPolicy(system, policy);
    stop.validate();
    std::size_t const n = system.numStates;
    std::vector<std::size_t> chosen(n);
    for (std::size_t s = 0; s < n; ++s) {
        chosen[s] = system.groupStart[s] + policy[s];
    }
    std::vector<double> x(n, 0.0);
    std::vector<double> next(n);
    std::size_t const limit = stop.maxIterations.value_or(100'000'000);
    for (std::size_t iteration = 0;; ++iteration) {
        if (iteration >= limit) {
            throw IterationError(ErrorCode::IterationLimit, "policy evaluation exceeded " + std::to_string(limit) + " iterations", iteration);
        }
        if ((iteration & 0x3ff) == 0) {
            env.check(iteration);
        }
        bool done = true;
        for (std::size_t s = 0; s < n; ++s) {
            next[s] = system.choiceValue(chosen[s], x);
            done = done && stop.converged(x[s], next[s]);
        }
        x.swap(next);
        if (done) {
            return x;
        }
    }
}

PiOutcome<Rational> policyIterateExact(ChoiceSystem<Rational> const& system, std::vector<std::size_t> initial, PiOptions const& options, Environment const& env) {
    auto evaluate = [&](std::vector<std::size_t> const& policy) { return solveExact(system, policy, env); };
    auto improves = [&](Rational const& candidate, Rational const& current) { return system.better(candidate, current); };
    return policyIterate(system, std::move(initial), options, env, evaluate, improves);
}

PiOutcome<double> policyIterateFloat(ChoiceSystem<double> const& system, Evaluator const& evaluator, std::vector<std::size_t> initial, PiOptions const& options,
                                     Environment const& env) {
    double tolerance = options.improvementTolerance;
    if (evaluator.kind == EvaluatorKind::Iterative) {
        tolerance = std::max(tolerance, evaluator.stop.epsilon);
    }
    auto evaluate = [&](std::vector<std::size_t> const& policy) {
        return evaluator.kind == EvaluatorKind::Iterative ? solveIterative(system, policy, evaluator.stop, env) : solveFloat(system, policy);
    };
    auto improves = [&](double candidate, double current) { return system.minimizing() ? candidate < current - tolerance : candidate > current + tolerance; };
    return policyIterate(system, std::move(initial), options, env, evaluate, improves);
}

SolveResult solvePi(graph::Quotient const& quotient, Evaluator const& evaluator, std::optional<model::Policy> const& initial, PiOptions const& options,
                    Environment const& env) {
    auto start = Clock::now();
    auto system = makeSystem(quotient);
    std::size_t const k = system.numStates;
    std::vector<std::size_t> policy(k, 0);
    if (initial) {
        if (initial->choices.size() < k) {
            throw Error(ErrorCode::DimensionMismatch, "initial policy is shorter than the number of quotient states");
        }
        std::copy_n(initial->choices.begin(), k, policy.begin());
    }

    SolveResult result;
    if (evaluator.kind == EvaluatorKind::ExactElimination) {
        auto outcome = policyIterateExact(system, std::move(policy), options, env);
        std::vector<double> approx;
        approx.reserve(k);
        for (auto const& v : outcome.values) {
            approx.push_back(toDouble(v));
        }
        result.soundness = Soundness::Exact;
        result.exactValues = detail::quotientValues(quotient, outcome.values);
        result.values = detail::quotientValues(quotient, approx);
        result.policy = detail::quotientPolicy(quotient, outcome.policy);
        result.iterations = outcome.iterations;
    } else {
        auto outcome = policyIterateFloat(toFloat(system), evaluator, std::move(policy), options, env);
        result.soundness = Soundness::Unsound;
        result.values = detail::quotientValues(quotient, outcome.values);
        result.policy = detail::quotientPolicy(quotient, outcome.policy);
        result.iterations = outcome.iterations;
    }
    result.backendCalls = k > 0 ? 1 : 0;
    result.solveSeconds = std::chrono::duration<double>(Clock::now() - start).count();
    return result;
}

model::Policy warmStartPolicy(graph::Quotient const& quotient, model::ValueVector<double> const& estimates) {
    if (estimates.size() != quotient.model.getNumberOfStates()) {
        throw Error(ErrorCode::DimensionMismatch, "estimates do not match the quotient");
    }
    auto system = toFloat(makeSystem(quotient));
    std::vector<double> x(estimates.values().begin(), estimates.values().begin() + static_cast<std::ptrdiff_t>(system.numStates));
    std::vector<double> backup;
    std::vector<std::size_t> choice;
    bellman(system, x, backup, &choice);
    return detail::quotientPolicy(quotient, choice);
}

SolveResult evaluatePolicy(model::InducedMc const& mc, model::Objective const& objective, Evaluator const& evaluator, Environment const& env) {
    auto const& chain = mc.getChain();
    objective.validateFor(chain);
    auto quotient = graph::collapseMecs(chain, objective);
    auto result = solvePi(quotient, evaluator, std::nullopt, PiOptions{}, env);
    return liftResult(chain, quotient, result);
}

}  // namespace mdpcheck::solver
