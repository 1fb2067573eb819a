#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace stormlet {

/// Fixed-length set of state (or choice) indices backed by 64-bit words.
/// Bits beyond size() are kept zero so word-wise comparison and counting stay exact.
class BitVector {
   public:
    using index_type = std::uint64_t;

    BitVector() = default;
    explicit BitVector(index_type size, bool initialValue = false);
    BitVector(index_type size, std::initializer_list<index_type> setBits);

    index_type size() const noexcept {
        return bitCount;
    }

    bool get(index_type index) const noexcept {
        return (words[index >> 6] >> (index & 63)) & 1u;
    }
    bool operator[](index_type index) const noexcept {
        return get(index);
    }
    void set(index_type index, bool value = true) noexcept {
        std::uint64_t const mask = std::uint64_t{1} << (index & 63);
        if (value) {
            words[index >> 6] |= mask;
        } else {
            words[index >> 6] &= ~mask;
        }
    }

    index_type count() const noexcept;
    bool empty() const noexcept;
    bool full() const noexcept;
    bool isSubsetOf(BitVector const& other) const;
    bool isDisjointFrom(BitVector const& other) const;

    BitVector operator~() const;
    BitVector operator&(BitVector const& other) const;
    BitVector operator|(BitVector const& other) const;
    /// Set difference.
    BitVector operator-(BitVector const& other) const;
    BitVector& operator&=(BitVector const& other);
    BitVector& operator|=(BitVector const& other);

    bool operator==(BitVector const& other) const = default;

    /// Indices of all set bits in ascending order.
    std::vector<index_type> setIndices() const;

    /// Number of set bits strictly below index.
    index_type rank(index_type index) const;

    template<typename Callback>
    void forEachSet(Callback&& callback) const {
        for (std::size_t word = 0; word < words.size(); ++word) {
            std::uint64_t bits = words[word];
            while (bits != 0) {
                int const offset = std::countr_zero(bits);
                callback(static_cast<index_type>(word * 64 + static_cast<std::size_t>(offset)));
                bits &= bits - 1;
            }
        }
    }

    /// e.g. "{0, 3, 4}"
    std::string toString() const;

   private:
    void clearTail() noexcept;
    void requireSameSize(BitVector const& other) const;

    index_type bitCount = 0;
    std::vector<std::uint64_t> words;
};

}  // namespace stormlet
