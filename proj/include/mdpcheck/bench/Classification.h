#pragma once

#include <optional>
#include <string_view>

#include "mdpcheck/io/ReferenceResults.h"

namespace mdpcheck::bench {

enum class RunStatus { Correct, Incorrect, Timeout, Error, NoReference };

std::string_view toString(RunStatus status);
/// Errors: BadParameter for unknown names.
RunStatus parseRunStatus(std::string_view name);

struct ClassificationRule {
    double relativeTolerance = 1e-3;
    /// Results count as correct when both they and the reference lie below.
    double exemptionFloor = 1e-8;
};

/// A computed value v' is incorrect against reference v if |v - v'| > v * tol,
/// unless both are below the floor. `value` nullopt means infinity.
bool isCorrect(std::optional<double> value, io::ReferenceValue const& reference, ClassificationRule const& rule = {});

/// Correct / Incorrect, or NoReference if no reference is known.
RunStatus classify(std::optional<double> value, std::optional<io::ReferenceValue> const& reference, ClassificationRule const& rule = {});

}  // namespace mdpcheck::bench
