#pragma once

#include <cstddef>
#include <vector>

namespace mdpcheck::model {

/// Per-state values over a numeric field. Infinity (expected rewards only) is
/// a flag next to the value so that rational vectors can express it too; the
/// stored number of an infinite entry is meaningless.
template<typename ValueType>
class ValueVector {
   public:
    ValueVector() = default;
    explicit ValueVector(std::size_t size, ValueType const& initial = ValueType(0)) : numbers(size, initial), infinite(size, false) {}
    explicit ValueVector(std::vector<ValueType> values) : numbers(std::move(values)), infinite(numbers.size(), false) {}

    std::size_t size() const {
        return numbers.size();
    }
    ValueType const& operator[](std::size_t i) const {
        return numbers[i];
    }
    bool isInfinite(std::size_t i) const {
        return infinite[i];
    }
    void set(std::size_t i, ValueType value) {
        numbers[i] = std::move(value);
        infinite[i] = false;
    }
    void setInfinite(std::size_t i) {
        numbers[i] = ValueType(0);
        infinite[i] = true;
    }
    std::vector<ValueType> const& values() const {
        return numbers;
    }

    bool operator==(ValueVector const&) const = default;

   private:
    std::vector<ValueType> numbers;
    std::vector<bool> infinite;
};

}  // namespace mdpcheck::model
