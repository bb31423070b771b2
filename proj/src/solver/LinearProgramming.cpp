#include "mdpcheck/solver/LinearProgramming.h"

#include <map>
#include <sstream>

#include "Lift.h"

namespace mdpcheck::solver {

template<typename ValueType>
void LpProblem<ValueType>::validate() const {
    if (lower.size() != numVariables || upper.size() != numVariables || objective.size() != numVariables) {
        throw Error(ErrorCode::BadParameter, "LP bounds or objective do not match the variable count");
    }
    for (std::size_t j = 0; j < numVariables; ++j) {
        if (upper[j] && *upper[j] < lower[j]) {
            throw Error(ErrorCode::BadParameter, "variable x" + std::to_string(j) + " has an empty bound interval");
        }
    }
    for (auto const& row : constraints) {
        for (auto const& entry : row.coefficients) {
            if (entry.first >= numVariables) {
                throw Error(ErrorCode::BadParameter, "constraint references undeclared variable x" + std::to_string(entry.first));
            }
        }
    }
}

template struct LpProblem<Rational>;
template struct LpProblem<double>;

template<typename ValueType>
LpProblem<ValueType> buildLp(ChoiceSystem<ValueType> const& system, LpOptions const& options, std::vector<std::size_t> const& objectiveStates,
                             std::optional<std::vector<ValueType>> const& warmLower) {
    std::size_t const n = system.numStates;
    bool const minimizing = system.minimizing();
    LpProblem<ValueType> lp;
    lp.numVariables = n;
    lp.sense = minimizing ? LpSense::Maximize : LpSense::Minimize;
    lp.lower.assign(n, ValueType(0));
    lp.upper.assign(n, system.valueBound);
    if (warmLower) {
        if (warmLower->size() != n) {
            throw Error(ErrorCode::DimensionMismatch, "warm bounds cover " + std::to_string(warmLower->size()) + " states, LP has " + std::to_string(n));
        }
        for (std::size_t s = 0; s < n; ++s) {
            ValueType bound = (*warmLower)[s];
            if (bound < 0) {
                bound = 0;
            }
            if (lp.upper[s] && *lp.upper[s] < bound) {
                bound = *lp.upper[s];
            }
            lp.lower[s] = bound;
        }
    }
    lp.objective.assign(n, ValueType(0));
    if (options.objective == LpObjectiveMode::AllStates) {
        lp.objective.assign(n, ValueType(1));
    } else {
        for (auto s : objectiveStates) {
            lp.objective.at(s) = ValueType(1);
        }
    }

    Relation const relation = minimizing ? Relation::LessEqual : Relation::GreaterEqual;
    Relation const reverse = minimizing ? Relation::GreaterEqual : Relation::LessEqual;
    for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t c = system.groupStart[s]; c < system.groupStart[s + 1]; ++c) {
            std::map<std::size_t, ValueType> row;
            row[s] = ValueType(1);
            for (std::size_t e = system.rowStart[c]; e < system.rowStart[c + 1]; ++e) {
                row[system.columns[e]] -= system.probabilities[e];
            }
            LpConstraint<ValueType> constraint;
            constraint.relation = relation;
            constraint.rhs = system.constants[c];
            for (auto& [var, coefficient] : row) {
                if (coefficient != 0) {
                    constraint.coefficients.emplace_back(var, std::move(coefficient));
                }
            }
            lp.constraints.push_back(constraint);
            if (options.uniqueActionEquality && system.choicesOf(s) == 1) {
                constraint.relation = reverse;
                lp.constraints.push_back(std::move(constraint));
            }
        }
    }
    return lp;
}

template LpProblem<Rational> buildLp(ChoiceSystem<Rational> const&, LpOptions const&, std::vector<std::size_t> const&, std::optional<std::vector<Rational>> const&);
template LpProblem<double> buildLp(ChoiceSystem<double> const&, LpOptions const&, std::vector<std::size_t> const&, std::optional<std::vector<double>> const&);

namespace {

/// Reward systems must let every state leave under some policy; otherwise a
/// state keeps accumulating reward forever.
void requireFiniteValues(graph::Quotient const& quotient, ChoiceSystem<Rational> const& system) {
    if (quotient.objective.isReachability()) {
        return;
    }
    std::vector<bool> escapes(system.numStates, false);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t s = 0; s < system.numStates; ++s) {
            if (escapes[s]) {
                continue;
            }
            for (std::size_t c = system.groupStart[s]; c < system.groupStart[s + 1] && !escapes[s]; ++c) {
                bool leaves = system.leaks[c];
                for (std::size_t e = system.rowStart[c]; e < system.rowStart[c + 1] && !leaves; ++e) {
                    leaves = escapes[system.columns[e]];
                }
                escapes[s] = leaves;
            }
            changed = changed || escapes[s];
        }
    }
    for (std::size_t s = 0; s < system.numStates; ++s) {
        if (!escapes[s]) {
            throw Error(ErrorCode::InfiniteValueState, "quotient state " + std::to_string(s) + " has infinite expected reward");
        }
    }
}

std::vector<std::size_t> initialObjective(graph::Quotient const& quotient) {
    auto initial = quotient.model.getInitialState();
    if (initial < quotient.numberOfMaybeStates()) {
        return {initial};
    }
    return {};
}

}  // namespace

LpProblem<Rational> buildLp(graph::Quotient const& quotient, LpOptions const& options) {
    auto system = makeSystem(quotient);
    requireFiniteValues(quotient, system);
    return buildLp(system, options, initialObjective(quotient), options.warmLowerBounds);
}

LpProblem<double> toFloat(LpProblem<Rational> const& lp) {
    LpProblem<double> result;
    result.numVariables = lp.numVariables;
    result.sense = lp.sense;
    for (auto const& v : lp.lower) {
        result.lower.push_back(toDouble(v));
    }
    for (auto const& v : lp.upper) {
        result.upper.push_back(v ? std::optional<double>(toDouble(*v)) : std::nullopt);
    }
    for (auto const& v : lp.objective) {
        result.objective.push_back(toDouble(v));
    }
    for (auto const& row : lp.constraints) {
        LpConstraint<double> converted;
        converted.relation = row.relation;
        converted.rhs = toDouble(row.rhs);
        for (auto const& [var, coefficient] : row.coefficients) {
            converted.coefficients.emplace_back(var, toDouble(coefficient));
        }
        result.constraints.push_back(std::move(converted));
    }
    return result;
}

std::string toLpFormat(LpProblem<Rational> const& lp) {
    auto term = [](Rational const& coefficient, std::size_t var) {
        std::string sign = sgn(coefficient) < 0 ? "- " : "+ ";
        Rational magnitude = abs(coefficient);
        return sign + (magnitude == 1 ? "" : mdpcheck::toString(magnitude) + " ") + "x" + std::to_string(var);
    };
    std::ostringstream out;
    out << (lp.sense == LpSense::Minimize ? "minimize" : "maximize") << "\n obj:";
    bool any = false;
    for (std::size_t j = 0; j < lp.numVariables; ++j) {
        if (sgn(lp.objective[j]) != 0) {
            out << ' ' << term(lp.objective[j], j);
            any = true;
        }
    }
    if (!any) {
        out << " 0";
    }
    out << "\nsubject to\n";
    for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
        auto const& row = lp.constraints[i];
        out << " c" << i << ':';
        for (auto const& [var, coefficient] : row.coefficients) {
            out << ' ' << term(coefficient, var);
        }
        out << (row.relation == Relation::GreaterEqual ? " >= " : row.relation == Relation::LessEqual ? " <= " : " = ") << mdpcheck::toString(row.rhs) << '\n';
    }
    out << "bounds\n";
    for (std::size_t j = 0; j < lp.numVariables; ++j) {
        out << ' ' << mdpcheck::toString(lp.lower[j]) << " <= x" << j << " <= " << (lp.upper[j] ? mdpcheck::toString(*lp.upper[j]) : std::string("inf")) << '\n';
    }
    out << "end\n";
    return out.str();
}

SolveResult solveLp(graph::Quotient const& quotient, LpOptions const& options, LpField field, SimplexOptions const& simplex, Environment const& env) {
    auto start = Clock::now();
    auto lp = buildLp(quotient, options);
    SolveResult result;
    if (field == LpField::Rational) {
        std::vector<Rational> values;
        if (lp.numVariables > 0) {
            auto solution = simplexSolve(lp, simplex, env);
            values = std::move(solution.values);
            result.iterations = solution.iterations;
        }
        std::vector<double> approx;
        for (auto const& v : values) {
            approx.push_back(toDouble(v));
        }
        std::vector<Rational> backup;
        std::vector<std::size_t> choice;
        bellman(makeSystem(quotient), values, backup, &choice);
        result.policy = detail::quotientPolicy(quotient, choice);
        result.soundness = Soundness::Exact;
        result.exactValues = detail::quotientValues(quotient, values);
        result.values = detail::quotientValues(quotient, approx);
    } else {
        std::vector<double> values;
        if (lp.numVariables > 0) {
            auto solution = simplexSolve(toFloat(lp), simplex, env);
            values = std::move(solution.values);
            result.iterations = solution.iterations;
        }
        std::vector<double> backup;
        std::vector<std::size_t> choice;
        bellman(toFloat(makeSystem(quotient)), values, backup, &choice);
        result.policy = detail::quotientPolicy(quotient, choice);
        result.soundness = Soundness::Unsound;
        result.values = detail::quotientValues(quotient, values);
    }
    result.backendCalls = lp.numVariables > 0 ? 1 : 0;
    result.solveSeconds = std::chrono::duration<double>(Clock::now() - start).count();
    return result;
}

}  // namespace mdpcheck::solver
