#pragma once

#include <cstddef>
#include <vector>

#include "mdpcheck/graph/Qualitative.h"
#include "mdpcheck/graph/StateSet.h"
#include "mdpcheck/model/SparseMdp.h"

namespace mdpcheck::graph {

using Scc = std::vector<std::size_t>;

/// Strongly connected components of the state graph restricted to `region`
/// and allowed choices, successors first: for every edge s -> s' between
/// different components, the component of s' comes earlier. States inside a
/// component are ascending.
std::vector<Scc> sccTopological(model::SparseMdp const& mdp, StateSet const& region, ChoiceMask const& allowed = {});
std::vector<Scc> sccTopological(model::SparseMdp const& mdp);

struct EndComponent {
    /// Ascending member states.
    std::vector<std::size_t> states;
    /// actions[i] are the retained action indices of states[i].
    std::vector<std::vector<std::size_t>> actions;

    bool contains(std::size_t state) const;
};

/// Maximal end components inside `region` using allowed choices, ordered by
/// smallest member.
std::vector<EndComponent> mecDecomposition(model::SparseMdp const& mdp, StateSet const& region, ChoiceMask const& allowed = {});
std::vector<EndComponent> mecDecomposition(model::SparseMdp const& mdp);

}  // namespace mdpcheck::graph
