#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace mdpcheck::graph {

/// Fixed-size set of state indices.
class StateSet {
   public:
    StateSet() = default;
    explicit StateSet(std::size_t size, bool full = false) : bits(size, full) {}
    StateSet(std::size_t size, std::initializer_list<std::size_t> members) : bits(size, false) {
        for (auto s : members) {
            bits.at(s) = true;
        }
    }
    StateSet(std::size_t size, std::vector<std::size_t> const& members) : bits(size, false) {
        for (auto s : members) {
            bits.at(s) = true;
        }
    }

    std::size_t size() const {
        return bits.size();
    }
    bool get(std::size_t state) const {
        return bits[state];
    }
    bool operator[](std::size_t state) const {
        return bits[state];
    }
    void set(std::size_t state, bool value = true) {
        bits[state] = value;
    }

    std::size_t count() const;
    bool empty() const {
        return count() == 0;
    }
    bool full() const {
        return count() == size();
    }
    std::vector<std::size_t> members() const;

    StateSet operator|(StateSet const& other) const;
    StateSet operator&(StateSet const& other) const;
    StateSet operator~() const;
    /// Members of this set that are not in `other`.
    StateSet minus(StateSet const& other) const;
    bool isSubsetOf(StateSet const& other) const;

    bool operator==(StateSet const& other) const = default;

   private:
    std::vector<bool> bits;
};

}  // namespace mdpcheck::graph
