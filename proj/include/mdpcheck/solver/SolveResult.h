#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "mdpcheck/Rational.h"
#include "mdpcheck/model/Policy.h"
#include "mdpcheck/model/ValueVector.h"

namespace mdpcheck::solver {

enum class Soundness {
    /// Values are the exact rational solution.
    Exact,
    /// Values carry certified lower/upper bounds.
    Sound,
    /// No guarantee (naive VI, floating-point PI/LP).
    Unsound
};

std::string_view toString(Soundness soundness);

/// The weaker of two guarantees.
inline Soundness weakest(Soundness a, Soundness b) {
    return static_cast<int>(a) > static_cast<int>(b) ? a : b;
}

struct SolveResult {
    Soundness soundness = Soundness::Unsound;
    /// Point values; for bounded results the lower bound.
    model::ValueVector<double> values;
    std::optional<model::ValueVector<Rational>> exactValues;
    std::optional<model::ValueVector<double>> lower;
    std::optional<model::ValueVector<double>> upper;
    /// For bounded results: whether (upper - lower) <= eps * lower holds
    /// everywhere for the requested eps.
    bool epsilonCertified = false;
    std::optional<model::Policy> policy;
    std::size_t iterations = 0;
    /// Number of times a numerical backend ran (topological solving skips
    /// trivial components).
    std::size_t backendCalls = 0;
    double preprocessSeconds = 0;
    double solveSeconds = 0;
};

}  // namespace mdpcheck::solver
