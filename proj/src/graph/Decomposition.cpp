#include "mdpcheck/graph/Decomposition.h"

#include <algorithm>
#include <limits>

namespace mdpcheck::graph {

namespace {

constexpr std::size_t unvisited = std::numeric_limits<std::size_t>::max();

bool isAllowed(ChoiceMask const& allowed, std::size_t choice) {
    return allowed.empty() || allowed[choice];
}

/// Deduplicated successor lists of the restricted graph.
std::vector<std::vector<std::size_t>> successorGraph(model::SparseMdp const& mdp, StateSet const& region, ChoiceMask const& allowed) {
    std::size_t const n = mdp.getNumberOfStates();
    std::vector<std::vector<std::size_t>> successors(n);
    for (std::size_t s = 0; s < n; ++s) {
        if (!region[s]) {
            continue;
        }
        for (std::size_t c = mdp.getChoiceOffset(s); c < mdp.getChoiceOffset(s + 1); ++c) {
            if (!isAllowed(allowed, c)) {
                continue;
            }
            for (auto const& t : mdp.getTransitions(c)) {
                if (region[t.target]) {
                    successors[s].push_back(t.target);
                }
            }
        }
        std::sort(successors[s].begin(), successors[s].end());
        successors[s].erase(std::unique(successors[s].begin(), successors[s].end()), successors[s].end());
    }
    return successors;
}

}  // namespace

std::vector<Scc> sccTopological(model::SparseMdp const& mdp, StateSet const& region, ChoiceMask const& allowed) {
    std::size_t const n = mdp.getNumberOfStates();
    auto successors = successorGraph(mdp, region, allowed);

    // Iterative Tarjan; components are emitted successors first.
    std::vector<std::size_t> index(n, unvisited);
    std::vector<std::size_t> lowlink(n, 0);
    std::vector<bool> onStack(n, false);
    std::vector<std::size_t> stack;
    std::vector<std::pair<std::size_t, std::size_t>> callStack;
    std::vector<Scc> result;
    std::size_t counter = 0;

    for (std::size_t root = 0; root < n; ++root) {
        if (!region[root] || index[root] != unvisited) {
            continue;
        }
        callStack.emplace_back(root, 0);
        index[root] = lowlink[root] = counter++;
        stack.push_back(root);
        onStack[root] = true;

        while (!callStack.empty()) {
            auto& [state, next] = callStack.back();
            if (next < successors[state].size()) {
                auto succ = successors[state][next++];
                if (index[succ] == unvisited) {
                    index[succ] = lowlink[succ] = counter++;
                    stack.push_back(succ);
                    onStack[succ] = true;
                    callStack.emplace_back(succ, 0);
                } else if (onStack[succ]) {
                    lowlink[state] = std::min(lowlink[state], index[succ]);
                }
                continue;
            }
            std::size_t finished = state;
            callStack.pop_back();
            if (!callStack.empty()) {
                auto parent = callStack.back().first;
                lowlink[parent] = std::min(lowlink[parent], lowlink[finished]);
            }
            if (lowlink[finished] == index[finished]) {
                Scc component;
                std::size_t member;
                do {
                    member = stack.back();
                    stack.pop_back();
                    onStack[member] = false;
                    component.push_back(member);
                } while (member != finished);
                std::sort(component.begin(), component.end());
                result.push_back(std::move(component));
            }
        }
    }
    return result;
}

std::vector<Scc> sccTopological(model::SparseMdp const& mdp) {
    return sccTopological(mdp, StateSet(mdp.getNumberOfStates(), true));
}

bool EndComponent::contains(std::size_t state) const {
    return std::binary_search(states.begin(), states.end(), state);
}

std::vector<EndComponent> mecDecomposition(model::SparseMdp const& mdp, StateSet const& region, ChoiceMask const& allowed) {
    std::size_t const n = mdp.getNumberOfStates();
    StateSet candidates = region;
    ChoiceMask active(mdp.getNumberOfChoices(), false);
    for (std::size_t s = 0; s < n; ++s) {
        if (!region[s]) {
            continue;
        }
        for (std::size_t c = mdp.getChoiceOffset(s); c < mdp.getChoiceOffset(s + 1); ++c) {
            active[c] = isAllowed(allowed, c);
        }
    }

    std::vector<Scc> components;
    while (true) {
        components = sccTopological(mdp, candidates, active);
        std::vector<std::size_t> componentOf(n, unvisited);
        for (std::size_t i = 0; i < components.size(); ++i) {
            for (auto s : components[i]) {
                componentOf[s] = i;
            }
        }

        bool changed = false;
        for (std::size_t s = 0; s < n; ++s) {
            if (!candidates[s]) {
                continue;
            }
            bool anyLeft = false;
            for (std::size_t c = mdp.getChoiceOffset(s); c < mdp.getChoiceOffset(s + 1); ++c) {
                if (!active[c]) {
                    continue;
                }
                for (auto const& t : mdp.getTransitions(c)) {
                    if (componentOf[t.target] != componentOf[s]) {
                        active[c] = false;
                        changed = true;
                        break;
                    }
                }
                anyLeft = anyLeft || active[c];
            }
            if (!anyLeft) {
                candidates.set(s, false);
                changed = true;
            }
        }
        if (!changed) {
            break;
        }
    }

    std::vector<EndComponent> result;
    for (auto const& component : components) {
        EndComponent ec;
        ec.states = component;
        for (auto s : component) {
            std::vector<std::size_t> kept;
            for (std::size_t a = 0; a < mdp.getNumberOfChoices(s); ++a) {
                if (active[mdp.getChoiceIndex(s, a)]) {
                    kept.push_back(a);
                }
            }
            ec.actions.push_back(std::move(kept));
        }
        result.push_back(std::move(ec));
    }
    std::sort(result.begin(), result.end(), [](auto const& l, auto const& r) { return l.states.front() < r.states.front(); });
    return result;
}

std::vector<EndComponent> mecDecomposition(model::SparseMdp const& mdp) {
    return mecDecomposition(mdp, StateSet(mdp.getNumberOfStates(), true));
}

}  // namespace mdpcheck::graph
