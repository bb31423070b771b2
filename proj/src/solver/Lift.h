#pragma once

#include <vector>

#include "mdpcheck/graph/Quotient.h"
#include "mdpcheck/model/ValueVector.h"

namespace mdpcheck::solver::detail {

/// Extends values of the maybe states by the target (1 for reachability, 0
/// otherwise) and sink (0) entries.
template<typename ValueType>
model::ValueVector<ValueType> quotientValues(graph::Quotient const& quotient, std::vector<ValueType> const& maybe) {
    model::ValueVector<ValueType> result(quotient.model.getNumberOfStates());
    for (std::size_t s = 0; s < maybe.size(); ++s) {
        result.set(s, maybe[s]);
    }
    result.set(quotient.target, ValueType(quotient.objective.isReachability() ? 1 : 0));
    result.set(quotient.sink, ValueType(0));
    return result;
}

/// Quotient-level policy from per-maybe-state action choices.
inline model::Policy quotientPolicy(graph::Quotient const& quotient, std::vector<std::size_t> const& maybe) {
    model::Policy policy = model::Policy::lowestIndex(quotient.model.getNumberOfStates());
    for (std::size_t s = 0; s < maybe.size(); ++s) {
        policy.choices[s] = maybe[s];
    }
    return policy;
}

}  // namespace mdpcheck::solver::detail
