#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stormlet/models/ModelKind.h"
#include "stormlet/models/RewardModel.h"
#include "stormlet/models/StateLabeling.h"
#include "stormlet/storage/SparseMatrix.h"
#include "stormlet/utility/BitVector.h"

namespace stormlet::models {

using storage::index_type;

/// Row-sum tolerance for floating-point models.
inline constexpr double kStochasticTolerance = 1e-10;

/// A DTMC, CTMC or MDP over one scalar domain.
///
/// Matrix rows are choices. For DTMCs and CTMCs there is exactly one choice per state and
/// choiceOffsets is the identity [0, 1, ..., n]. A CTMC stores its embedded (jump) chain
/// together with per-state exit rates; absorbing CTMC states carry a self-loop and rate 1.
/// The constructor validates every structural invariant; a Model is immutable afterwards.
template<typename ValueType>
class Model {
   public:
    Model(ModelKind kind, storage::SparseMatrix<ValueType> matrix, std::vector<index_type> choiceOffsets, StateLabeling labeling,
          BitVector initialStates, std::map<std::string, RewardModel<ValueType>> rewardModels = {},
          std::optional<std::vector<ValueType>> exitRates = std::nullopt);

    /// Convenience for DTMC/CTMC: identity choice offsets.
    static Model deterministic(ModelKind kind, storage::SparseMatrix<ValueType> matrix, StateLabeling labeling, BitVector initialStates,
                               std::map<std::string, RewardModel<ValueType>> rewardModels = {},
                               std::optional<std::vector<ValueType>> exitRates = std::nullopt);

    ModelKind kind() const noexcept {
        return modelKind;
    }
    index_type numberOfStates() const noexcept {
        return static_cast<index_type>(offsets.size() - 1);
    }
    index_type numberOfChoices() const noexcept {
        return transitions.rows();
    }
    index_type numberOfTransitions() const noexcept {
        return transitions.entryCount();
    }

    storage::SparseMatrix<ValueType> const& matrix() const noexcept {
        return transitions;
    }
    std::vector<index_type> const& choiceOffsets() const noexcept {
        return offsets;
    }
    StateLabeling const& labeling() const noexcept {
        return stateLabeling;
    }
    BitVector const& initialStates() const noexcept {
        return initial;
    }
    std::map<std::string, RewardModel<ValueType>> const& rewardModels() const noexcept {
        return rewards;
    }
    bool hasRewardModel(std::string const& name) const {
        return rewards.count(name) > 0;
    }
    /// Looks up by name; an empty name selects the only reward model. Throws MissingRewardModel.
    RewardModel<ValueType> const& rewardModel(std::string const& name) const;

    bool hasExitRates() const noexcept {
        return rates.has_value();
    }
    std::vector<ValueType> const& exitRates() const {
        return *rates;
    }

    index_type choiceCount(index_type state) const noexcept {
        return offsets[state + 1] - offsets[state];
    }

    bool operator==(Model const& other) const = default;

   private:
    void validate() const;

    ModelKind modelKind;
    storage::SparseMatrix<ValueType> transitions;
    std::vector<index_type> offsets;
    StateLabeling stateLabeling;
    BitVector initial;
    std::map<std::string, RewardModel<ValueType>> rewards;
    std::optional<std::vector<ValueType>> rates;
};

extern template class Model<double>;
extern template class Model<Rational>;

/// Identity offsets [0, 1, ..., n].
std::vector<index_type> identityOffsets(index_type states);

/// Index of the state owning each matrix row.
std::vector<index_type> rowToState(std::vector<index_type> const& choiceOffsets);

/// Converts values (matrix, rewards, rates) to another scalar domain. Double to rational is exact.
template<typename To, typename From>
Model<To> convertModel(Model<From> const& model);

}  // namespace stormlet::models
