#include "mdpcheck/model/Objective.h"

#include "mdpcheck/Errors.h"

namespace mdpcheck::model {

Objective Objective::reachability(graph::StateSet target, OptimizationDirection direction) {
    return Objective{ObjectiveKind::Reachability, direction, std::move(target)};
}

Objective Objective::reachability(SparseMdp const& mdp, std::string const& label, OptimizationDirection direction) {
    return reachability(mdp.getStates(label), direction);
}

Objective Objective::totalReward(OptimizationDirection direction) {
    return Objective{ObjectiveKind::TotalReward, direction, graph::StateSet()};
}

void Objective::validateFor(SparseMdp const& mdp) const {
    if (isReachability()) {
        if (target.size() != mdp.getNumberOfStates()) {
            throw Error(ErrorCode::BadParameter, "target set size does not match the model");
        }
        if (target.empty()) {
            throw Error(ErrorCode::BadParameter, "reachability target set is empty");
        }
    } else if (!mdp.hasRewards()) {
        throw Error(ErrorCode::BadParameter, "total reward objective on a model without rewards");
    }
}

Objective parseObjective(SparseMdp const& mdp, std::string const& spec) {
    auto bad = [&spec]() { return Error(ErrorCode::BadParameter, "malformed objective '" + spec + "', expected reach:{min|max}:<label> or reward:{min|max}"); };
    auto first = spec.find(':');
    if (first == std::string::npos) {
        throw bad();
    }
    std::string kind = spec.substr(0, first);
    std::string rest = spec.substr(first + 1);
    auto second = rest.find(':');
    std::string dir = rest.substr(0, second);
    OptimizationDirection direction;
    if (dir == "min") {
        direction = OptimizationDirection::Minimize;
    } else if (dir == "max") {
        direction = OptimizationDirection::Maximize;
    } else {
        throw bad();
    }

    Objective objective;
    if (kind == "reach") {
        if (second == std::string::npos || second + 1 >= rest.size()) {
            throw bad();
        }
        objective = Objective::reachability(mdp, rest.substr(second + 1), direction);
    } else if (kind == "reward") {
        if (second != std::string::npos) {
            throw bad();
        }
        objective = Objective::totalReward(direction);
    } else {
        throw bad();
    }
    objective.validateFor(mdp);
    return objective;
}

}  // namespace mdpcheck::model
