#include "stormlet/prism/StateMap.h"

#include <bit>
#include <cstring>

namespace stormlet::prism {

namespace {

constexpr std::uint64_t kEmpty = ~std::uint64_t(0);

std::uint64_t mix(std::uint64_t h) {
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdULL;
    h ^= h >> 33;
    h *= 0xc4ceb9fe1a85ec53ULL;
    h ^= h >> 33;
    return h;
}

}  // namespace

StateMap::StateMap(std::vector<VariableInfo> variables) : variableInfos(std::move(variables)) {
    unsigned offset = 0;
    for (auto const& variable : variableInfos) {
        auto const span = static_cast<std::uint64_t>(variable.upper - variable.lower);
        unsigned const width = span == 0 ? 0 : static_cast<unsigned>(std::bit_width(span));
        offsets.push_back(offset);
        widths.push_back(width);
        offset += width;
    }
    wordsPerState = std::max<std::size_t>(1, (offset + 63) / 64);
    table.assign(64, kEmpty);
    scratch.resize(wordsPerState);
}

void StateMap::pack(std::span<std::int64_t const> valuation, std::uint64_t* out) const {
    std::fill(out, out + wordsPerState, 0);
    for (std::size_t i = 0; i < variableInfos.size(); ++i) {
        if (widths[i] == 0) {
            continue;
        }
        auto const value = static_cast<std::uint64_t>(valuation[i] - variableInfos[i].lower);
        unsigned const word = offsets[i] / 64;
        unsigned const shift = offsets[i] % 64;
        out[word] |= value << shift;
        if (shift + widths[i] > 64) {
            out[word + 1] |= value >> (64 - shift);
        }
    }
}

std::uint64_t StateMap::hashWords(std::uint64_t const* data) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (std::size_t i = 0; i < wordsPerState; ++i) {
        h = mix(h ^ data[i]);
    }
    return h;
}

void StateMap::grow() {
    std::vector<std::uint64_t> bigger(table.size() * 2, kEmpty);
    std::uint64_t const mask = bigger.size() - 1;
    for (std::uint64_t state = 0; state < count; ++state) {
        std::uint64_t slot = hashWords(words(state)) & mask;
        while (bigger[slot] != kEmpty) {
            slot = (slot + 1) & mask;
        }
        bigger[slot] = state;
    }
    table = std::move(bigger);
}

std::pair<std::uint64_t, bool> StateMap::insert(std::span<std::int64_t const> valuation) {
    pack(valuation, scratch.data());
    std::uint64_t const mask = table.size() - 1;
    std::uint64_t slot = hashWords(scratch.data()) & mask;
    while (table[slot] != kEmpty) {
        if (std::memcmp(words(table[slot]), scratch.data(), wordsPerState * sizeof(std::uint64_t)) == 0) {
            return {table[slot], false};
        }
        slot = (slot + 1) & mask;
    }
    table[slot] = count;
    packed.insert(packed.end(), scratch.begin(), scratch.end());
    std::uint64_t const index = count++;
    if (2 * count > table.size()) {
        grow();
    }
    return {index, true};
}

std::optional<std::uint64_t> StateMap::find(std::span<std::int64_t const> valuation) const {
    for (std::size_t i = 0; i < variableInfos.size(); ++i) {
        if (valuation[i] < variableInfos[i].lower || valuation[i] > variableInfos[i].upper) {
            return std::nullopt;
        }
    }
    pack(valuation, scratch.data());
    std::uint64_t const mask = table.size() - 1;
    std::uint64_t slot = hashWords(scratch.data()) & mask;
    while (table[slot] != kEmpty) {
        if (std::memcmp(words(table[slot]), scratch.data(), wordsPerState * sizeof(std::uint64_t)) == 0) {
            return table[slot];
        }
        slot = (slot + 1) & mask;
    }
    return std::nullopt;
}

void StateMap::valuation(std::uint64_t state, std::vector<std::int64_t>& out) const {
    out.resize(variableInfos.size());
    std::uint64_t const* data = words(state);
    for (std::size_t i = 0; i < variableInfos.size(); ++i) {
        std::uint64_t value = 0;
        if (widths[i] > 0) {
            unsigned const word = offsets[i] / 64;
            unsigned const shift = offsets[i] % 64;
            value = data[word] >> shift;
            if (shift + widths[i] > 64) {
                value |= data[word + 1] << (64 - shift);
            }
            if (widths[i] < 64) {
                value &= (std::uint64_t(1) << widths[i]) - 1;
            }
        }
        out[i] = variableInfos[i].lower + static_cast<std::int64_t>(value);
    }
}

std::vector<std::int64_t> StateMap::valuation(std::uint64_t state) const {
    std::vector<std::int64_t> result;
    valuation(state, result);
    return result;
}

std::string StateMap::toString(std::uint64_t state) const {
    return formatValuation(variableInfos, valuation(state));
}

bool StateMap::operator==(StateMap const& other) const {
    if (count != other.count || variableInfos.size() != other.variableInfos.size()) {
        return false;
    }
    for (std::uint64_t state = 0; state < count; ++state) {
        if (valuation(state) != other.valuation(state)) {
            return false;
        }
    }
    return true;
}

std::string formatValuation(std::vector<VariableInfo> const& variables, std::span<std::int64_t const> valuation) {
    std::string result = "(";
    for (std::size_t i = 0; i < variables.size(); ++i) {
        if (i > 0) {
            result += ", ";
        }
        result += variables[i].name + "=";
        if (variables[i].type == ExpressionType::Bool) {
            result += valuation[i] != 0 ? "true" : "false";
        } else {
            result += std::to_string(valuation[i]);
        }
    }
    return result + ")";
}

}  // namespace stormlet::prism
