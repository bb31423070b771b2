#include "mdpcheck/bench/Classification.h"

#include <cmath>
#include <string>

#include "mdpcheck/Errors.h"

namespace mdpcheck::bench {

std::string_view toString(RunStatus status) {
    switch (status) {
        case RunStatus::Correct:
            return "correct";
        case RunStatus::Incorrect:
            return "incorrect";
        case RunStatus::Timeout:
            return "timeout";
        case RunStatus::Error:
            return "error";
        case RunStatus::NoReference:
            return "no-reference";
    }
    return "error";
}

RunStatus parseRunStatus(std::string_view name) {
    for (auto status : {RunStatus::Correct, RunStatus::Incorrect, RunStatus::Timeout, RunStatus::Error, RunStatus::NoReference}) {
        if (toString(status) == name) {
            return status;
        }
    }
    throw Error(ErrorCode::BadParameter, "unknown run status '" + std::string(name) + "'");
}

bool isCorrect(std::optional<double> value, io::ReferenceValue const& reference, ClassificationRule const& rule) {
    if (!value || !reference) {
        return !value && !reference;
    }
    double const expected = toDouble(*reference);
    double const actual = *value;
    if (std::abs(expected) < rule.exemptionFloor && std::abs(actual) < rule.exemptionFloor) {
        return true;
    }
    return !(std::abs(expected - actual) > std::abs(expected) * rule.relativeTolerance);
}

RunStatus classify(std::optional<double> value, std::optional<io::ReferenceValue> const& reference, ClassificationRule const& rule) {
    if (!reference) {
        return RunStatus::NoReference;
    }
    return isCorrect(value, *reference, rule) ? RunStatus::Correct : RunStatus::Incorrect;
}

}  // namespace mdpcheck::bench
