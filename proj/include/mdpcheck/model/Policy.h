#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mdpcheck/model/SparseMdp.h"

namespace mdpcheck::model {

/// Memoryless deterministic policy: the chosen action index per state.
struct Policy {
    std::vector<std::size_t> choices;

    bool operator==(Policy const&) const = default;

    static Policy lowestIndex(std::size_t numStates) {
        return Policy{std::vector<std::size_t>(numStates, 0)};
    }
};

/// Markov chain obtained by fixing a policy in an MDP.
class InducedMc {
   public:
    SparseMdp const& getChain() const {
        return chain;
    }
    Policy const& getPolicy() const {
        return policy;
    }
    /// Fingerprint of the source MDP (see fingerprint()).
    std::uint64_t getSourceFingerprint() const {
        return sourceFingerprint;
    }

   private:
    friend InducedMc inducedMc(SparseMdp const& mdp, Policy const& policy);

    SparseMdp chain;
    Policy policy;
    std::uint64_t sourceFingerprint = 0;
};

/// Keeps states, rewards, and labels; state s keeps only action policy[s].
/// Errors: BadPolicyIndex.
InducedMc inducedMc(SparseMdp const& mdp, Policy const& policy);

/// Stable structural hash of a model.
std::uint64_t fingerprint(SparseMdp const& mdp);

}  // namespace mdpcheck::model
