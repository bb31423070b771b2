#include "mdpcheck/Errors.h"

namespace mdpcheck {

std::string_view toString(ErrorCode code) {
    switch (code) {
        case ErrorCode::NonStochastic:
            return "NonStochastic";
        case ErrorCode::EmptyActionSet:
            return "EmptyActionSet";
        case ErrorCode::BadIndex:
            return "BadIndex";
        case ErrorCode::NegativeReward:
            return "NegativeReward";
        case ErrorCode::BadPolicyIndex:
            return "BadPolicyIndex";
        case ErrorCode::BadParameter:
            return "BadParameter";
        case ErrorCode::DimensionMismatch:
            return "DimensionMismatch";
        case ErrorCode::RewardInMec:
            return "RewardInMec";
        case ErrorCode::InfiniteValueState:
            return "InfiniteValueState";
        case ErrorCode::IterationLimit:
            return "IterationLimit";
        case ErrorCode::SingularSystem:
            return "SingularSystem";
        case ErrorCode::Infeasible:
            return "Infeasible";
        case ErrorCode::Unbounded:
            return "Unbounded";
        case ErrorCode::Timeout:
            return "Timeout";
        case ErrorCode::ParseError:
            return "ParseError";
    }
    return "Unknown";
}

}  // namespace mdpcheck
