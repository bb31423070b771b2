#include <cmath>
#include <limits>

#include "mdpcheck/Errors.h"
#include "mdpcheck/solver/LinearProgramming.h"

namespace mdpcheck::solver {

namespace {

/// Sign tests: exact for rationals, tolerance-based for doubles.
template<typename ValueType>
struct Arithmetic;

template<>
struct Arithmetic<Rational> {
    explicit Arithmetic(SimplexOptions const&) {}
    bool isZero(Rational const& v) const {
        return sgn(v) == 0;
    }
    bool negativeCost(Rational const& v) const {
        return sgn(v) < 0;
    }
    bool positiveCost(Rational const& v) const {
        return sgn(v) > 0;
    }
    bool usablePivot(Rational const& v) const {
        return sgn(v) != 0;
    }
    bool infeasible(Rational const& residual) const {
        return sgn(residual) < 0;
    }
    bool nonzeroResidual(Rational const& v) const {
        return sgn(v) != 0;
    }
    bool lessRatio(Rational const& a, Rational const& b) const {
        return a < b;
    }
    bool sameRatio(Rational const& a, Rational const& b) const {
        return a == b;
    }
    Rational clampRatio(Rational v) const {
        return v;
    }
};

template<>
struct Arithmetic<double> {
    explicit Arithmetic(SimplexOptions const& o) : options(o) {}
    bool isZero(double v) const {
        return v == 0.0;
    }
    bool negativeCost(double v) const {
        return v < -options.optimalityTolerance;
    }
    bool positiveCost(double v) const {
        return v > options.optimalityTolerance;
    }
    bool usablePivot(double v) const {
        return std::abs(v) > options.pivotTolerance;
    }
    bool infeasible(double residual) const {
        return residual < -options.feasibilityTolerance;
    }
    bool nonzeroResidual(double v) const {
        return std::abs(v) > options.feasibilityTolerance;
    }
    bool lessRatio(double a, double b) const {
        return a < b - options.feasibilityTolerance;
    }
    bool sameRatio(double a, double b) const {
        return std::abs(a - b) <= options.feasibilityTolerance;
    }
    double clampRatio(double v) const {
        return v < 0 ? 0.0 : v;
    }
    SimplexOptions options;
};

template<typename ValueType>
class BoundedSimplex {
   public:
    BoundedSimplex(LpProblem<ValueType> const& lp, SimplexOptions const& options, Environment const& env)
        : lp(lp), options(options), env(env), arith(options) {}

    LpSolution<ValueType> run() {
        setUp();
        LpSolution<ValueType> solution;
        if (needsPhaseOne) {
            solution.phaseOne = true;
            std::vector<ValueType> phaseOneCost(numColumns, ValueType(0));
            for (std::size_t j = 0; j < numColumns; ++j) {
                if (artificial[j]) {
                    phaseOneCost[j] = 1;
                }
            }
            optimize(phaseOneCost, true);
            ValueType infeasibility(0);
            for (std::size_t j = 0; j < numColumns; ++j) {
                if (artificial[j]) {
                    infeasibility += x[j];
                }
            }
            if (arith.nonzeroResidual(infeasibility)) {
                throw Error(ErrorCode::Infeasible, "linear program is infeasible");
            }
        }
        // Artificials stay at zero from here on.
        for (std::size_t j = 0; j < numColumns; ++j) {
            if (artificial[j]) {
                upper[j] = ValueType(0);
                x[j] = ValueType(0);
            }
        }

        std::vector<ValueType> cost(numColumns, ValueType(0));
        for (std::size_t j = 0; j < lp.numVariables; ++j) {
            cost[j] = lp.sense == LpSense::Minimize ? lp.objective[j] : ValueType(-lp.objective[j]);
        }
        optimize(cost, false);

        solution.values.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(lp.numVariables));
        solution.objectiveValue = ValueType(0);
        for (std::size_t j = 0; j < lp.numVariables; ++j) {
            solution.objectiveValue += lp.objective[j] * x[j];
        }
        solution.iterations = iterations;
        return solution;
    }

   private:
    static constexpr std::size_t none = std::numeric_limits<std::size_t>::max();

    void setUp() {
        lp.validate();
        std::size_t const n = lp.numVariables;
        std::size_t const m = lp.constraints.size();

        // Start at the upper corner if it is finite and feasible, else at the lower one.
        std::vector<ValueType> start(lp.lower);
        bool upperStart = n > 0;
        for (std::size_t j = 0; j < n && upperStart; ++j) {
            upperStart = lp.upper[j].has_value();
        }
        if (upperStart) {
            std::vector<ValueType> corner(n);
            for (std::size_t j = 0; j < n; ++j) {
                corner[j] = *lp.upper[j];
            }
            bool feasible = true;
            for (auto const& row : lp.constraints) {
                ValueType residual = residualAt(row, corner);
                if ((row.relation == Relation::GreaterEqual && arith.infeasible(ValueType(-residual))) ||
                    (row.relation == Relation::LessEqual && arith.infeasible(residual)) || (row.relation == Relation::Equal && arith.nonzeroResidual(residual))) {
                    feasible = false;
                    break;
                }
            }
            if (feasible) {
                start = std::move(corner);
            }
        }

        std::size_t slackCount = 0;
        for (auto const& row : lp.constraints) {
            slackCount += row.relation == Relation::Equal ? 0 : 1;
        }
        // Columns: structurals, one slack per inequality, then artificials added on demand.
        numColumns = n + slackCount;
        lower.assign(numColumns, ValueType(0));
        upper.assign(numColumns, std::nullopt);
        x.assign(numColumns, ValueType(0));
        artificial.assign(numColumns, false);
        atUpper.assign(numColumns, false);
        for (std::size_t j = 0; j < n; ++j) {
            lower[j] = lp.lower[j];
            upper[j] = lp.upper[j];
            x[j] = start[j];
            atUpper[j] = upper[j].has_value() && start[j] == *upper[j] && !(start[j] == lower[j]);
        }

        struct RowPlan {
            std::size_t slack = none;
            int slackSign = 0;
            bool useArtificial = false;
            int artificialSign = 1;
            ValueType basicValue{0};
        };
        std::vector<RowPlan> plans(m);
        std::size_t nextSlack = n;
        for (std::size_t i = 0; i < m; ++i) {
            auto const& row = lp.constraints[i];
            ValueType residual = residualAt(row, start);
            auto& plan = plans[i];
            if (row.relation != Relation::Equal) {
                plan.slack = nextSlack++;
                plan.slackSign = row.relation == Relation::GreaterEqual ? -1 : 1;
                ValueType slackValue = plan.slackSign > 0 ? residual : ValueType(-residual);
                if (!arith.infeasible(slackValue)) {
                    plan.basicValue = arith.clampRatio(slackValue);
                    continue;
                }
            }
            plan.useArtificial = true;
            plan.artificialSign = residual < 0 ? -1 : 1;
            plan.basicValue = plan.artificialSign > 0 ? residual : ValueType(-residual);
            if (arith.nonzeroResidual(plan.basicValue)) {
                needsPhaseOne = true;
            } else {
                plan.basicValue = ValueType(0);
            }
        }
        std::size_t artificialBase = numColumns;
        for (auto const& plan : plans) {
            if (plan.useArtificial) {
                ++numColumns;
            }
        }
        lower.resize(numColumns, ValueType(0));
        upper.resize(numColumns, std::nullopt);
        x.resize(numColumns, ValueType(0));
        artificial.resize(numColumns, true);
        atUpper.resize(numColumns, false);

        tableau.assign(m, std::vector<ValueType>(numColumns, ValueType(0)));
        basis.assign(m, none);
        rowOf.assign(numColumns, none);
        std::size_t nextArtificial = artificialBase;
        for (std::size_t i = 0; i < m; ++i) {
            auto const& row = lp.constraints[i];
            auto& plan = plans[i];
            auto& t = tableau[i];
            for (auto const& [var, coefficient] : row.coefficients) {
                t[var] += coefficient;
            }
            if (plan.slack != none) {
                t[plan.slack] = ValueType(plan.slackSign);
            }
            std::size_t basic;
            int scale;
            if (plan.useArtificial) {
                basic = nextArtificial++;
                t[basic] = ValueType(plan.artificialSign);
                scale = plan.artificialSign;
            } else {
                basic = plan.slack;
                scale = plan.slackSign;
            }
            if (scale < 0) {
                for (auto& v : t) {
                    if (!arith.isZero(v)) {
                        v = -v;
                    }
                }
            }
            basis[i] = basic;
            rowOf[basic] = i;
            x[basic] = plan.basicValue;
        }
    }

    ValueType residualAt(LpConstraint<ValueType> const& row, std::vector<ValueType> const& point) const {
        ValueType lhs(0);
        for (auto const& [var, coefficient] : row.coefficients) {
            lhs += coefficient * point[var];
        }
        return ValueType(row.rhs - lhs);
    }

    bool isFixed(std::size_t j) const {
        return upper[j].has_value() && *upper[j] == lower[j];
    }

    void computeReducedCosts(std::vector<ValueType> const& cost) {
        reduced = cost;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            ValueType const& cb = cost[basis[i]];
            if (arith.isZero(cb)) {
                continue;
            }
            auto const& t = tableau[i];
            for (std::size_t j = 0; j < numColumns; ++j) {
                if (!arith.isZero(t[j])) {
                    reduced[j] -= cb * t[j];
                }
            }
        }
    }

    void optimize(std::vector<ValueType> const& cost, bool phaseOne) {
        computeReducedCosts(cost);
        while (true) {
            if (iterations >= options.maxIterations) {
                throw IterationError(ErrorCode::IterationLimit, "simplex exceeded " + std::to_string(options.maxIterations) + " iterations", iterations);
            }
            if ((iterations & 0x3f) == 0) {
                env.check(iterations);
            }

            // Bland: smallest eligible index enters.
            std::size_t entering = none;
            int direction = 0;
            for (std::size_t j = 0; j < numColumns; ++j) {
                if (rowOf[j] != none || isFixed(j) || (!phaseOne && artificial[j])) {
                    continue;
                }
                if (!atUpper[j] && arith.negativeCost(reduced[j])) {
                    entering = j;
                    direction = 1;
                    break;
                }
                if (atUpper[j] && arith.positiveCost(reduced[j])) {
                    entering = j;
                    direction = -1;
                    break;
                }
            }
            if (entering == none) {
                return;
            }
            ++iterations;

            // Ratio test; ties go to the smallest variable index.
            std::optional<ValueType> bestRatio;
            std::size_t leavingRow = none;
            std::size_t leavingVar = none;
            bool leavingToUpper = false;
            auto consider = [&](ValueType ratio, std::size_t row, std::size_t var, bool toUpper) {
                ratio = arith.clampRatio(std::move(ratio));
                if (!bestRatio || arith.lessRatio(ratio, *bestRatio) || (arith.sameRatio(ratio, *bestRatio) && var < leavingVar)) {
                    if (!bestRatio || arith.lessRatio(ratio, *bestRatio)) {
                        bestRatio = ratio;
                    }
                    leavingRow = row;
                    leavingVar = var;
                    leavingToUpper = toUpper;
                }
            };
            if (upper[entering]) {
                consider(ValueType(*upper[entering] - lower[entering]), none, entering, direction > 0);
            }
            for (std::size_t i = 0; i < basis.size(); ++i) {
                ValueType const& alpha = tableau[i][entering];
                if (!arith.usablePivot(alpha)) {
                    continue;
                }
                std::size_t b = basis[i];
                // Basic variable moves by -alpha * direction per unit step.
                bool decreases = direction > 0 ? alpha > 0 : alpha < 0;
                ValueType magnitude = alpha < 0 ? ValueType(-alpha) : alpha;
                if (decreases) {
                    consider(ValueType((x[b] - lower[b]) / magnitude), i, b, false);
                } else if (upper[b]) {
                    consider(ValueType((*upper[b] - x[b]) / magnitude), i, b, true);
                }
            }
            if (!bestRatio) {
                throw Error(ErrorCode::Unbounded, "linear program is unbounded");
            }

            ValueType step = *bestRatio;
            if (!arith.isZero(step)) {
                ValueType signedStep = direction > 0 ? step : ValueType(-step);
                x[entering] += signedStep;
                for (std::size_t i = 0; i < basis.size(); ++i) {
                    ValueType const& alpha = tableau[i][entering];
                    if (!arith.isZero(alpha)) {
                        x[basis[i]] -= alpha * signedStep;
                    }
                }
            }

            if (leavingRow == none) {
                // Bound flip of the entering variable.
                atUpper[entering] = direction > 0;
                x[entering] = atUpper[entering] ? *upper[entering] : lower[entering];
                continue;
            }

            std::size_t leaving = basis[leavingRow];
            pivot(leavingRow, entering);
            x[leaving] = leavingToUpper ? *upper[leaving] : lower[leaving];
            atUpper[leaving] = leavingToUpper;
            atUpper[entering] = false;
        }
    }

    void pivot(std::size_t r, std::size_t q) {
        auto& pivotRow = tableau[r];
        ValueType pivotValue = pivotRow[q];
        std::vector<std::size_t> nonzeros;
        for (std::size_t j = 0; j < numColumns; ++j) {
            if (!arith.isZero(pivotRow[j])) {
                pivotRow[j] /= pivotValue;
                nonzeros.push_back(j);
            }
        }
        pivotRow[q] = ValueType(1);
        for (std::size_t i = 0; i < tableau.size(); ++i) {
            if (i == r) {
                continue;
            }
            auto& row = tableau[i];
            if (arith.isZero(row[q])) {
                continue;
            }
            ValueType factor = row[q];
            for (auto j : nonzeros) {
                row[j] -= factor * pivotRow[j];
            }
            row[q] = ValueType(0);
        }
        if (!arith.isZero(reduced[q])) {
            ValueType factor = reduced[q];
            for (auto j : nonzeros) {
                reduced[j] -= factor * pivotRow[j];
            }
            reduced[q] = ValueType(0);
        }
        std::size_t leaving = basis[r];
        rowOf[leaving] = none;
        basis[r] = q;
        rowOf[q] = r;
    }

    LpProblem<ValueType> const& lp;
    SimplexOptions options;
    Environment env;
    Arithmetic<ValueType> arith;

    std::size_t numColumns = 0;
    std::vector<std::vector<ValueType>> tableau;
    std::vector<ValueType> x;
    std::vector<ValueType> lower;
    std::vector<std::optional<ValueType>> upper;
    std::vector<bool> artificial;
    std::vector<bool> atUpper;
    std::vector<std::size_t> basis;
    std::vector<std::size_t> rowOf;
    std::vector<ValueType> reduced;
    bool needsPhaseOne = false;
    std::size_t iterations = 0;
};

}  // namespace

template<typename ValueType>
LpSolution<ValueType> simplexSolve(LpProblem<ValueType> const& lp, SimplexOptions const& options, Environment const& env) {
    BoundedSimplex<ValueType> simplex(lp, options, env);
    return simplex.run();
}

template LpSolution<Rational> simplexSolve(LpProblem<Rational> const&, SimplexOptions const&, Environment const&);
template LpSolution<double> simplexSolve(LpProblem<double> const&, SimplexOptions const&, Environment const&);

}  // namespace mdpcheck::solver
