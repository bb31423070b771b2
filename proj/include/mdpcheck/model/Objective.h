#pragma once

#include <string>

#include "mdpcheck/graph/StateSet.h"
#include "mdpcheck/model/SparseMdp.h"

namespace mdpcheck::model {

enum class OptimizationDirection { Minimize, Maximize };

inline bool minimize(OptimizationDirection dir) {
    return dir == OptimizationDirection::Minimize;
}

enum class ObjectiveKind { Reachability, TotalReward };

/// Reachability of a target set, or expected total state reward, under the
/// best (max) or worst (min) memoryless deterministic policy.
struct Objective {
    ObjectiveKind kind = ObjectiveKind::Reachability;
    OptimizationDirection direction = OptimizationDirection::Maximize;
    /// Target states; empty (size zero) for total reward.
    graph::StateSet target;

    bool isReachability() const {
        return kind == ObjectiveKind::Reachability;
    }

    static Objective reachability(graph::StateSet target, OptimizationDirection direction);
    static Objective reachability(SparseMdp const& mdp, std::string const& label, OptimizationDirection direction);
    static Objective totalReward(OptimizationDirection direction);

    /// Throws BadParameter if the objective does not fit `mdp`: empty or
    /// mis-sized target, or a reward objective on a reward-free model.
    void validateFor(SparseMdp const& mdp) const;
};

/// Parses `reach:{min|max}:<label>` or `reward:{min|max}`.
Objective parseObjective(SparseMdp const& mdp, std::string const& spec);

}  // namespace mdpcheck::model
