#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stormlet/prism/TypeChecker.h"

namespace stormlet::prism {

/// Bijection between explored state indices and variable valuations. Valuations are bit-packed
/// (each variable uses ceil(log2(upper - lower + 1)) bits) and looked up through an
/// open-addressing hash table.
class StateMap {
   public:
    StateMap() = default;
    explicit StateMap(std::vector<VariableInfo> variables);

    std::uint64_t size() const noexcept {
        return count;
    }
    std::vector<VariableInfo> const& variables() const noexcept {
        return variableInfos;
    }

    /// Index of the valuation, inserting it if new. The flag tells whether it was inserted.
    std::pair<std::uint64_t, bool> insert(std::span<std::int64_t const> valuation);
    std::optional<std::uint64_t> find(std::span<std::int64_t const> valuation) const;

    std::vector<std::int64_t> valuation(std::uint64_t state) const;
    void valuation(std::uint64_t state, std::vector<std::int64_t>& out) const;

    /// `(x=1, b=true)`.
    std::string toString(std::uint64_t state) const;

    bool operator==(StateMap const& other) const;

   private:
    void pack(std::span<std::int64_t const> valuation, std::uint64_t* out) const;
    std::uint64_t hashWords(std::uint64_t const* words) const;
    std::uint64_t const* words(std::uint64_t state) const {
        return packed.data() + state * wordsPerState;
    }
    void grow();

    std::vector<VariableInfo> variableInfos;
    std::vector<unsigned> offsets;
    std::vector<unsigned> widths;
    std::size_t wordsPerState = 1;
    std::vector<std::uint64_t> packed;
    std::vector<std::uint64_t> table;
    std::uint64_t count = 0;
    mutable std::vector<std::uint64_t> scratch;
};

std::string formatValuation(std::vector<VariableInfo> const& variables, std::span<std::int64_t const> valuation);

}  // namespace stormlet::prism
