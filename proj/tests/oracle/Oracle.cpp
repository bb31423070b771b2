#include "Oracle.h"

#include <stdexcept>

namespace mdpcheck::oracle {

namespace {

using Matrix = std::vector<std::vector<Rational>>;

/// Solves A x = b in place by Gauss-Jordan elimination.
std::vector<Rational> gaussJordan(Matrix a, std::vector<Rational> b) {
    std::size_t const n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a[pivot][col] == 0) {
            ++pivot;
        }
        if (pivot == n) {
            throw std::runtime_error("oracle: singular chain system");
        }
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        Rational inverse = 1 / a[col][col];
        for (auto& v : a[col]) {
            v *= inverse;
        }
        b[col] *= inverse;
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || a[row][col] == 0) {
                continue;
            }
            Rational factor = a[row][col];
            for (std::size_t k = col; k < n; ++k) {
                a[row][k] -= factor * a[col][k];
            }
            b[row] -= factor * b[col];
        }
    }
    return b;
}

/// reach[s][t]: t reachable from s in zero or more steps.
std::vector<std::vector<bool>> closure(model::SparseMdp const& mdp, std::vector<std::size_t> const& policy) {
    std::size_t const n = mdp.getNumberOfStates();
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (std::size_t s = 0; s < n; ++s) {
        std::vector<std::size_t> stack{s};
        reach[s][s] = true;
        while (!stack.empty()) {
            auto u = stack.back();
            stack.pop_back();
            for (auto const& t : mdp.getTransitions(u, policy[u])) {
                if (!reach[s][t.target]) {
                    reach[s][t.target] = true;
                    stack.push_back(t.target);
                }
            }
        }
    }
    return reach;
}

bool better(OracleValue const& a, OracleValue const& b, bool maximize) {
    if (!a || !b) {
        return maximize ? (!a && b) : (a && !b);
    }
    return maximize ? *a > *b : *a < *b;
}

}  // namespace

std::vector<OracleValue> chainValues(model::SparseMdp const& mdp, std::vector<std::size_t> const& policy, model::Objective const& objective) {
    std::size_t const n = mdp.getNumberOfStates();
    auto reach = closure(mdp, policy);
    std::vector<OracleValue> values(n, Rational(0));
    std::vector<bool> unknown(n, false);

    if (objective.isReachability()) {
        for (std::size_t s = 0; s < n; ++s) {
            if (objective.target.get(s)) {
                values[s] = Rational(1);
                continue;
            }
            for (std::size_t t = 0; t < n && !unknown[s]; ++t) {
                unknown[s] = reach[s][t] && objective.target.get(t);
            }
        }
    } else {
        std::vector<bool> recurrent(n, true);
        for (std::size_t s = 0; s < n; ++s) {
            for (std::size_t t = 0; t < n; ++t) {
                if (reach[s][t] && !reach[t][s]) {
                    recurrent[s] = false;
                }
            }
        }
        for (std::size_t s = 0; s < n; ++s) {
            bool infinite = false;
            for (std::size_t t = 0; t < n; ++t) {
                infinite = infinite || (reach[s][t] && recurrent[t] && mdp.getReward(t) > 0);
            }
            if (infinite) {
                values[s] = std::nullopt;
            } else {
                unknown[s] = !recurrent[s];
            }
        }
    }

    std::vector<std::size_t> index(n, n);
    std::vector<std::size_t> variables;
    for (std::size_t s = 0; s < n; ++s) {
        if (unknown[s]) {
            index[s] = variables.size();
            variables.push_back(s);
        }
    }
    std::size_t const m = variables.size();
    Matrix a(m, std::vector<Rational>(m, Rational(0)));
    std::vector<Rational> b(m, Rational(0));
    for (std::size_t i = 0; i < m; ++i) {
        auto s = variables[i];
        a[i][i] += 1;
        if (!objective.isReachability()) {
            b[i] += mdp.getReward(s);
        }
        for (auto const& t : mdp.getTransitions(s, policy[s])) {
            if (unknown[t.target]) {
                a[i][index[t.target]] -= t.probability;
            } else if (values[t.target]) {
                b[i] += t.probability * *values[t.target];
            }
        }
    }
    auto solution = gaussJordan(std::move(a), std::move(b));
    for (std::size_t i = 0; i < m; ++i) {
        values[variables[i]] = solution[i];
    }
    return values;
}

std::size_t policyCount(model::SparseMdp const& mdp, std::size_t cap) {
    std::size_t count = 1;
    for (std::size_t s = 0; s < mdp.getNumberOfStates(); ++s) {
        count *= mdp.getNumberOfChoices(s);
        if (count > cap) {
            return cap + 1;
        }
    }
    return count;
}

OracleResult bruteForce(model::SparseMdp const& mdp, model::Objective const& objective, std::size_t maxPolicies) {
    if (policyCount(mdp, maxPolicies) > maxPolicies) {
        throw std::length_error("oracle: too many policies");
    }
    std::size_t const n = mdp.getNumberOfStates();
    bool const maximize = !model::minimize(objective.direction);
    std::vector<std::size_t> policy(n, 0);
    OracleResult result;
    while (true) {
        auto values = chainValues(mdp, policy, objective);
        if (result.policies == 0) {
            result.values = values;
        } else {
            for (std::size_t s = 0; s < n; ++s) {
                if (better(values[s], result.values[s], maximize)) {
                    result.values[s] = values[s];
                }
            }
        }
        ++result.policies;
        std::size_t s = 0;
        while (s < n && ++policy[s] == mdp.getNumberOfChoices(s)) {
            policy[s] = 0;
            ++s;
        }
        if (s == n) {
            return result;
        }
    }
}

}  // namespace mdpcheck::oracle
