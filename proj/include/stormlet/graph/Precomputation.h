#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "stormlet/models/Model.h"
#include "stormlet/storage/SparseMatrix.h"
#include "stormlet/utility/BitVector.h"

namespace stormlet::graph {

using storage::index_type;

/// Value-free view of a model's transition structure: successors per choice and
/// (state-level) predecessors per state.
class TransitionGraph {
   public:
    template<typename ValueType>
    TransitionGraph(storage::SparseMatrix<ValueType> const& matrix, std::vector<index_type> choiceOffsets)
        : offsets(std::move(choiceOffsets)),
          successorOffsets(matrix.rowOffsets().begin(), matrix.rowOffsets().end()),
          successorList(matrix.columnIndices().begin(), matrix.columnIndices().end()) {
        buildPredecessors();
    }

    template<typename ValueType>
    explicit TransitionGraph(models::Model<ValueType> const& model) : TransitionGraph(model.matrix(), model.choiceOffsets()) {}

    index_type numberOfStates() const noexcept {
        return static_cast<index_type>(offsets.size() - 1);
    }
    index_type firstChoice(index_type state) const noexcept {
        return offsets[state];
    }
    index_type endChoice(index_type state) const noexcept {
        return offsets[state + 1];
    }
    std::span<index_type const> successors(index_type choice) const noexcept {
        return std::span<index_type const>(successorList).subspan(successorOffsets[choice], successorOffsets[choice + 1] - successorOffsets[choice]);
    }
    std::span<index_type const> predecessors(index_type state) const noexcept {
        return std::span<index_type const>(predecessorList).subspan(predecessorOffsets[state], predecessorOffsets[state + 1] - predecessorOffsets[state]);
    }
    std::vector<index_type> const& choiceOffsets() const noexcept {
        return offsets;
    }

   private:
    void buildPredecessors();

    std::vector<index_type> offsets;
    std::vector<index_type> successorOffsets;
    std::vector<index_type> successorList;
    std::vector<index_type> predecessorOffsets;
    std::vector<index_type> predecessorList;
};

/// States from which some path (under some scheduler) satisfies safe U target.
BitVector probGreater0E(TransitionGraph const& graph, BitVector const& safe, BitVector const& target);

/// States with P(safe U target) = 0 in a deterministic model.
BitVector prob0(TransitionGraph const& graph, BitVector const& safe, BitVector const& target);

/// States with P(safe U target) = 1 in a deterministic model; prob0States must be prob0 of the same query.
BitVector prob1(TransitionGraph const& graph, BitVector const& safe, BitVector const& target, BitVector const& prob0States);

struct Prob01 {
    BitVector prob0;
    BitVector prob1;
};

/// prob0 = prob0A (all schedulers give 0), prob1 = prob1E (some scheduler gives 1).
Prob01 prob01Max(TransitionGraph const& graph, BitVector const& safe, BitVector const& target);

/// prob0 = prob0E (some scheduler gives 0), prob1 = prob1A (all schedulers give 1).
Prob01 prob01Min(TransitionGraph const& graph, BitVector const& safe, BitVector const& target);

/// Per state in `region`, the lowest-index choice (restricted to `allowedChoices` when given)
/// that moves with positive probability to a state attracted earlier, starting from `goal`.
/// Entries for states outside region or never attracted are kNoIndex. Choice indices are global rows.
std::vector<index_type> attractorChoices(TransitionGraph const& graph, BitVector const& goal, BitVector const& region,
                                         std::optional<BitVector> const& allowedChoices = std::nullopt);

/// Choices whose successors all lie in `states`.
BitVector choicesStayingIn(TransitionGraph const& graph, BitVector const& states);

template<typename ValueType>
BitVector prob0(models::Model<ValueType> const& model, BitVector const& safe, BitVector const& target) {
    return prob0(TransitionGraph(model), safe, target);
}

template<typename ValueType>
BitVector prob1(models::Model<ValueType> const& model, BitVector const& safe, BitVector const& target, BitVector const& prob0States) {
    return prob1(TransitionGraph(model), safe, target, prob0States);
}

template<typename ValueType>
Prob01 prob01Max(models::Model<ValueType> const& model, BitVector const& safe, BitVector const& target) {
    return prob01Max(TransitionGraph(model), safe, target);
}

template<typename ValueType>
Prob01 prob01Min(models::Model<ValueType> const& model, BitVector const& safe, BitVector const& target) {
    return prob01Min(TransitionGraph(model), safe, target);
}

}  // namespace stormlet::graph
