#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stormlet/storage/SparseMatrix.h"
#include "stormlet/utility/BitVector.h"

namespace stormlet::modelchecker {

using storage::index_type;

/// Per-state outcome of a check.
///
/// Quantitative results fill `values`; states in `infinite` hold +inf (the double entry is
/// +inf, the rational entry 0) and states in `undefined` have no value (conditional
/// probabilities with a zero-probability condition; the double entry is NaN). Bounded
/// operators and boolean formulas fill `truth`. A purely boolean formula has no values.
template<typename ValueType>
struct CheckResult {
    std::vector<ValueType> values;
    BitVector infinite;
    BitVector undefined;
    std::optional<BitVector> truth;

    std::uint64_t iterations = 0;
    std::string method;
    /// MDPs only: chosen choice per state, as an offset into the state's choices.
    std::optional<std::vector<index_type>> scheduler;
    double timeMs = 0.0;

    bool isInfinite(index_type state) const noexcept {
        return infinite.size() > state && infinite.get(state);
    }
    bool isUndefined(index_type state) const noexcept {
        return undefined.size() > state && undefined.get(state);
    }
};

}  // namespace stormlet::modelchecker
