#include "stormlet/utility/BitVector.h"

#include <sstream>

#include "stormlet/utility/Exceptions.h"

namespace stormlet {

BitVector::BitVector(index_type size, bool initialValue) : bitCount(size), words((size + 63) / 64, initialValue ? ~std::uint64_t{0} : 0) {
    clearTail();
}

BitVector::BitVector(index_type size, std::initializer_list<index_type> setBits) : BitVector(size) {
    for (auto index : setBits) {
        if (index >= size) {
            throw Error(ErrorCode::IndexOutOfRange, "bit index " + std::to_string(index) + " out of range for size " + std::to_string(size));
        }
        set(index);
    }
}

void BitVector::clearTail() noexcept {
    if (bitCount % 64 != 0 && !words.empty()) {
        words.back() &= (std::uint64_t{1} << (bitCount % 64)) - 1;
    }
}

void BitVector::requireSameSize(BitVector const& other) const {
    if (bitCount != other.bitCount) {
        throw Error(ErrorCode::DimensionMismatch, "bit vector sizes differ: " + std::to_string(bitCount) + " vs " + std::to_string(other.bitCount));
    }
}

BitVector::index_type BitVector::count() const noexcept {
    index_type result = 0;
    for (auto word : words) {
        result += static_cast<index_type>(std::popcount(word));
    }
    return result;
}

bool BitVector::empty() const noexcept {
    for (auto word : words) {
        if (word != 0) {
            return false;
        }
    }
    return true;
}

bool BitVector::full() const noexcept {
    return count() == bitCount;
}

bool BitVector::isSubsetOf(BitVector const& other) const {
    requireSameSize(other);
    for (std::size_t i = 0; i < words.size(); ++i) {
        if ((words[i] & ~other.words[i]) != 0) {
            return false;
        }
    }
    return true;
}

bool BitVector::isDisjointFrom(BitVector const& other) const {
    requireSameSize(other);
    for (std::size_t i = 0; i < words.size(); ++i) {
        if ((words[i] & other.words[i]) != 0) {
            return false;
        }
    }
    return true;
}

BitVector BitVector::operator~() const {
    BitVector result(*this);
    for (auto& word : result.words) {
        word = ~word;
    }
    result.clearTail();
    return result;
}

BitVector BitVector::operator&(BitVector const& other) const {
    BitVector result(*this);
    result &= other;
    return result;
}

BitVector BitVector::operator|(BitVector const& other) const {
    BitVector result(*this);
    result |= other;
    return result;
}

BitVector BitVector::operator-(BitVector const& other) const {
    requireSameSize(other);
    BitVector result(*this);
    for (std::size_t i = 0; i < words.size(); ++i) {
        result.words[i] &= ~other.words[i];
    }
    return result;
}

BitVector& BitVector::operator&=(BitVector const& other) {
    requireSameSize(other);
    for (std::size_t i = 0; i < words.size(); ++i) {
        words[i] &= other.words[i];
    }
    return *this;
}

BitVector& BitVector::operator|=(BitVector const& other) {
    requireSameSize(other);
    for (std::size_t i = 0; i < words.size(); ++i) {
        words[i] |= other.words[i];
    }
    return *this;
}

std::vector<BitVector::index_type> BitVector::setIndices() const {
    std::vector<index_type> result;
    result.reserve(count());
    forEachSet([&](index_type index) { result.push_back(index); });
    return result;
}

BitVector::index_type BitVector::rank(index_type index) const {
    index_type result = 0;
    index_type const fullWords = index / 64;
    for (index_type word = 0; word < fullWords; ++word) {
        result += static_cast<index_type>(std::popcount(words[word]));
    }
    if (index % 64 != 0) {
        result += static_cast<index_type>(std::popcount(words[fullWords] & ((std::uint64_t{1} << (index % 64)) - 1)));
    }
    return result;
}

std::string BitVector::toString() const {
    std::ostringstream out;
    out << '{';
    bool first = true;
    forEachSet([&](index_type index) {
        out << (first ? "" : ", ") << index;
        first = false;
    });
    out << '}';
    return out.str();
}

}  // namespace stormlet
