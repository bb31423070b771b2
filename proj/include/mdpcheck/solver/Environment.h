#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <string>

#include "mdpcheck/Errors.h"

namespace mdpcheck::solver {

using Clock = std::chrono::steady_clock;

enum class Precision { Absolute, Relative };

/// Convergence test between successive iterates.
struct StoppingCriterion {
    Precision mode = Precision::Relative;
    double epsilon = 1e-6;
    std::optional<std::size_t> maxIterations;

    /// |next - previous| <= eps (absolute) or <= eps * |next| (relative, where
    /// 0 <= eps * 0 holds).
    bool converged(double previous, double next) const;
    void validate() const;
};

/// Cooperative cancellation shared by all iterative loops of one solve.
struct Environment {
    std::optional<Clock::time_point> deadline;

    bool expired() const {
        return deadline && Clock::now() >= *deadline;
    }
    /// Throws a Timeout IterationError once the deadline has passed.
    void check(std::size_t iterations) const {
        if (expired()) {
            throw IterationError(ErrorCode::Timeout, "deadline exceeded after " + std::to_string(iterations) + " iterations", iterations);
        }
    }

    static Environment withTimeout(double seconds) {
        Environment env;
        env.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(seconds));
        return env;
    }
};

}  // namespace mdpcheck::solver
