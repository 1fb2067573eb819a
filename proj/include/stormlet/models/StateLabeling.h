#pragma once

#include <map>
#include <string>
#include <vector>

#include "stormlet/utility/BitVector.h"

namespace stormlet::models {

class StateLabeling {
   public:
    StateLabeling() = default;
    explicit StateLabeling(std::uint64_t stateCount) : stateCount(stateCount) {}

    std::uint64_t numberOfStates() const noexcept {
        return stateCount;
    }

    /// Adds a label; throws DuplicateName if it exists, DimensionMismatch on wrong length.
    void addLabel(std::string const& name, BitVector states);
    /// Adds a label with no states.
    void addLabel(std::string const& name);
    void addLabelToState(std::string const& name, std::uint64_t state);

    bool containsLabel(std::string const& name) const;
    /// Throws UnknownLabel.
    BitVector const& getStates(std::string const& name) const;

    /// Label names in lexicographic order.
    std::vector<std::string> labelNames() const;
    std::map<std::string, BitVector> const& labels() const noexcept {
        return labelMap;
    }

    bool operator==(StateLabeling const& other) const = default;

   private:
    std::uint64_t stateCount = 0;
    std::map<std::string, BitVector> labelMap;
};

}  // namespace stormlet::models
