#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mdpcheck {

enum class ErrorCode {
    NonStochastic,
    EmptyActionSet,
    BadIndex,
    NegativeReward,
    BadPolicyIndex,
    BadParameter,
    DimensionMismatch,
    RewardInMec,
    InfiniteValueState,
    IterationLimit,
    SingularSystem,
    Infeasible,
    Unbounded,
    Timeout,
    ParseError
};

std::string_view toString(ErrorCode code);

class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, std::string const& message) : std::runtime_error(message), errorCode(code) {}

    ErrorCode code() const {
        return errorCode;
    }

   private:
    ErrorCode errorCode;
};

/// Raised by iterative solvers that stop on an iteration budget or deadline;
/// carries the number of iterations performed so far.
class IterationError : public Error {
   public:
    IterationError(ErrorCode code, std::string const& message, std::size_t iterations) : Error(code, message), performed(iterations) {}

    std::size_t iterations() const {
        return performed;
    }

   private:
    std::size_t performed;
};

class ParseError : public Error {
   public:
    ParseError(std::size_t line, std::string const& reason)
        : Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + reason), lineNumber(line), why(reason) {}

    std::size_t line() const {
        return lineNumber;
    }
    std::string const& reason() const {
        return why;
    }

   private:
    std::size_t lineNumber;
    std::string why;
};

}  // namespace mdpcheck
