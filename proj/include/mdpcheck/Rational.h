#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace mdpcheck {

using Rational = mpq_class;

/// Parses "p/q", an integer, or a terminating decimal with optional exponent
/// ("0.125", "1e-6", "2.5E3") into an exact rational. Throws
/// std::invalid_argument on malformed input.
Rational parseRational(std::string_view text);

/// Lowest-terms rendering: "p/q", or "p" when the denominator is one.
std::string toString(Rational const& value);

/// Rounds toward zero. Probabilities and rewards are nonnegative, so this is
/// rounding downward, which the warm-start estimates rely on.
inline double toDouble(Rational const& value) {
    return value.get_d();
}

/// Exact conversion of a finite double.
inline Rational fromDouble(double value) {
    return Rational(value);
}

}  // namespace mdpcheck
