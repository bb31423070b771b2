#include "mdpcheck/model/Policy.h"

#include "mdpcheck/Errors.h"

namespace mdpcheck::model {

namespace {

class Fnv1a {
   public:
    void add(std::uint64_t value) {
        for (int i = 0; i < 8; ++i) {
            hash ^= (value >> (8 * i)) & 0xffu;
            hash *= 1099511628211ull;
        }
    }
    void add(std::string const& text) {
        for (unsigned char c : text) {
            hash ^= c;
            hash *= 1099511628211ull;
        }
        add(text.size());
    }
    std::uint64_t value() const {
        return hash;
    }

   private:
    std::uint64_t hash = 14695981039346656037ull;
};

}  // namespace

InducedMc inducedMc(SparseMdp const& mdp, Policy const& policy) {
    if (policy.choices.size() != mdp.getNumberOfStates()) {
        throw Error(ErrorCode::BadPolicyIndex, "policy covers " + std::to_string(policy.choices.size()) + " states, model has " + std::to_string(mdp.getNumberOfStates()));
    }
    RawMdp raw = mdp.toRaw();
    for (std::size_t s = 0; s < raw.numStates; ++s) {
        if (policy.choices[s] >= raw.choices[s].size()) {
            throw Error(ErrorCode::BadPolicyIndex, "policy picks action " + std::to_string(policy.choices[s]) + " in state " + std::to_string(s) + " which has " +
                                                       std::to_string(raw.choices[s].size()) + " actions");
        }
        auto chosen = std::move(raw.choices[s][policy.choices[s]]);
        raw.choices[s].clear();
        raw.choices[s].push_back(std::move(chosen));
    }
    InducedMc result;
    result.chain = buildMdp(raw);
    result.policy = policy;
    result.sourceFingerprint = fingerprint(mdp);
    return result;
}

std::uint64_t fingerprint(SparseMdp const& mdp) {
    Fnv1a hash;
    hash.add(mdp.getNumberOfStates());
    hash.add(mdp.getInitialState());
    for (std::size_t s = 0; s < mdp.getNumberOfStates(); ++s) {
        hash.add(mdp.getNumberOfChoices(s));
        for (std::size_t a = 0; a < mdp.getNumberOfChoices(s); ++a) {
            for (auto const& t : mdp.getTransitions(s, a)) {
                hash.add(t.target);
                hash.add(toString(t.probability));
            }
        }
        if (mdp.hasRewards()) {
            hash.add(toString(mdp.getReward(s)));
        }
    }
    for (auto const& [name, members] : mdp.getLabels()) {
        hash.add(name);
        for (auto s : members) {
            hash.add(s);
        }
    }
    return hash.value();
}

}  // namespace mdpcheck::model
