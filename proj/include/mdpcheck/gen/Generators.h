#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "mdpcheck/Rational.h"
#include "mdpcheck/model/SparseMdp.h"

namespace mdpcheck::gen {

/// The hard family M_n with states -n..n. State 0 has index 0, state i > 0
/// index i, and state -i index n + i. State 0 plays one action to +-1;
/// every other inner state has actions m (one step outwards or back to 0)
/// and j (to +-n), in that order. Label "goal" is {n}. Errors: BadParameter
/// for n < 2.
model::SparseMdp genHardMn(std::size_t n);

/// Index of state i in genHardMn(n).
std::size_t hardMnIndex(std::size_t n, long i);

/// Five-state model s0, s1, s2, s3, G (indices 0..4): s0 chooses a -> s1 or
/// b -> s2; s1 reaches G with 1/10, else s3; s2 reaches G and s3 with
/// delta/2 each and returns to s0 otherwise. Label "goal" is {G}. Errors:
/// BadParameter unless 0 < delta < 1.
model::SparseMdp genPiTrap(Rational const& delta);

struct RandomMdpOptions {
    std::uint64_t seed = 0;
    std::size_t numStates = 10;
    std::size_t maxActions = 2;
    /// Fraction of states used as successors per action, in (0, 1].
    double density = 0.3;
    /// Fraction of states labelled "goal", in (0, 1]; at least one.
    double targetFraction = 0.1;
    /// Rewards drawn uniformly from 0..maxReward when given.
    std::optional<unsigned> maxReward;
    /// Only edges to higher indices, so every SCC is a singleton.
    bool acyclic = false;
};

/// Deterministic random model with denominators at most 64. Goal states
/// are absorbing with reward 0; the initial state is 0. Errors:
/// BadParameter.
model::SparseMdp genRandomMdp(RandomMdpOptions const& options);

}  // namespace mdpcheck::gen
