#include "mdpcheck/graph/StateSet.h"

#include <cassert>

namespace mdpcheck::graph {

std::size_t StateSet::count() const {
    std::size_t result = 0;
    for (bool b : bits) {
        result += b ? 1 : 0;
    }
    return result;
}

std::vector<std::size_t> StateSet::members() const {
    std::vector<std::size_t> result;
    for (std::size_t s = 0; s < bits.size(); ++s) {
        if (bits[s]) {
            result.push_back(s);
        }
    }
    return result;
}

StateSet StateSet::operator|(StateSet const& other) const {
    assert(size() == other.size());
    StateSet result(size());
    for (std::size_t s = 0; s < size(); ++s) {
        result.bits[s] = bits[s] || other.bits[s];
    }
    return result;
}

StateSet StateSet::operator&(StateSet const& other) const {
    assert(size() == other.size());
    StateSet result(size());
    for (std::size_t s = 0; s < size(); ++s) {
        result.bits[s] = bits[s] && other.bits[s];
    }
    return result;
}

StateSet StateSet::operator~() const {
    StateSet result(size());
    for (std::size_t s = 0; s < size(); ++s) {
        result.bits[s] = !bits[s];
    }
    return result;
}

StateSet StateSet::minus(StateSet const& other) const {
    return *this & ~other;
}

bool StateSet::isSubsetOf(StateSet const& other) const {
    for (std::size_t s = 0; s < size(); ++s) {
        if (bits[s] && !other.bits[s]) {
            return false;
        }
    }
    return true;
}

}  // namespace mdpcheck::graph
