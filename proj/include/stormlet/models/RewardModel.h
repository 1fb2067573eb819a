#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stormlet/utility/Exceptions.h"
#include "stormlet/utility/Numbers.h"

namespace stormlet::models {

/// State rewards are indexed by state, action rewards by matrix row (choice).
template<typename ValueType>
class RewardModel {
   public:
    RewardModel() = default;
    RewardModel(std::string name, std::optional<std::vector<ValueType>> stateRewards, std::optional<std::vector<ValueType>> actionRewards)
        : rewardName(std::move(name)), stateRewardVector(std::move(stateRewards)), actionRewardVector(std::move(actionRewards)) {
        checkNonNegative(stateRewardVector, "state");
        checkNonNegative(actionRewardVector, "action");
    }

    std::string const& name() const noexcept {
        return rewardName;
    }
    bool hasStateRewards() const noexcept {
        return stateRewardVector.has_value();
    }
    bool hasActionRewards() const noexcept {
        return actionRewardVector.has_value();
    }
    std::vector<ValueType> const& stateRewards() const {
        return *stateRewardVector;
    }
    std::vector<ValueType> const& actionRewards() const {
        return *actionRewardVector;
    }
    std::optional<std::vector<ValueType>> const& optionalStateRewards() const noexcept {
        return stateRewardVector;
    }
    std::optional<std::vector<ValueType>> const& optionalActionRewards() const noexcept {
        return actionRewardVector;
    }

    /// b[c] = state reward of c's state + action reward of c.
    std::vector<ValueType> totalChoiceRewards(std::vector<std::uint64_t> const& choiceOffsets) const {
        std::vector<ValueType> result(choiceOffsets.back(), utility::zero<ValueType>());
        for (std::uint64_t state = 0; state + 1 < choiceOffsets.size(); ++state) {
            for (auto choice = choiceOffsets[state]; choice < choiceOffsets[state + 1]; ++choice) {
                if (stateRewardVector) {
                    result[choice] += (*stateRewardVector)[state];
                }
                if (actionRewardVector) {
                    result[choice] += (*actionRewardVector)[choice];
                }
            }
        }
        return result;
    }

    bool operator==(RewardModel const& other) const = default;

   private:
    void checkNonNegative(std::optional<std::vector<ValueType>> const& rewards, char const* kind) const {
        if (!rewards) {
            return;
        }
        for (std::size_t i = 0; i < rewards->size(); ++i) {
            if ((*rewards)[i] < 0 || !utility::isFinite((*rewards)[i])) {
                throw Error(ErrorCode::NegativeReward, std::string("reward model '") + rewardName + "' has invalid " + kind + " reward at index " + std::to_string(i));
            }
        }
    }

    std::string rewardName;
    std::optional<std::vector<ValueType>> stateRewardVector;
    std::optional<std::vector<ValueType>> actionRewardVector;
};

}  // namespace stormlet::models
