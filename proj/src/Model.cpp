#include "stormlet/models/Model.h"

#include "stormlet/utility/Exceptions.h"

namespace stormlet::models {

ModelKind classify(TimeDomain time, bool nondeterministic) {
    if (time == TimeDomain::Discrete) {
        return nondeterministic ? ModelKind::Mdp : ModelKind::Dtmc;
    }
    if (nondeterministic) {
        throw Error(ErrorCode::Unsupported, "continuous-time nondeterministic models (Markov automata) are not supported");
    }
    return ModelKind::Ctmc;
}

std::string_view toString(ModelKind kind) {
    switch (kind) {
        case ModelKind::Dtmc:
            return "dtmc";
        case ModelKind::Ctmc:
            return "ctmc";
        case ModelKind::Mdp:
            return "mdp";
    }
    return "unknown";
}

void StateLabeling::addLabel(std::string const& name, BitVector states) {
    if (states.size() != stateCount) {
        throw Error(ErrorCode::DimensionMismatch, "label '" + name + "' has " + std::to_string(states.size()) + " bits, expected " + std::to_string(stateCount));
    }
    if (!labelMap.emplace(name, std::move(states)).second) {
        throw Error(ErrorCode::DuplicateName, "label '" + name + "' declared twice");
    }
}

void StateLabeling::addLabel(std::string const& name) {
    addLabel(name, BitVector(stateCount));
}

void StateLabeling::addLabelToState(std::string const& name, std::uint64_t state) {
    auto it = labelMap.find(name);
    if (it == labelMap.end()) {
        throw Error(ErrorCode::UnknownLabel, "unknown label '" + name + "'");
    }
    if (state >= stateCount) {
        throw Error(ErrorCode::StateOutOfRange, "state " + std::to_string(state) + " out of range");
    }
    it->second.set(state);
}

bool StateLabeling::containsLabel(std::string const& name) const {
    return labelMap.count(name) > 0;
}

BitVector const& StateLabeling::getStates(std::string const& name) const {
    auto it = labelMap.find(name);
    if (it == labelMap.end()) {
        throw Error(ErrorCode::UnknownLabel, "unknown label '" + name + "'");
    }
    return it->second;
}

std::vector<std::string> StateLabeling::labelNames() const {
    std::vector<std::string> names;
    for (auto const& [name, states] : labelMap) {
        names.push_back(name);
    }
    return names;
}

std::vector<index_type> identityOffsets(index_type states) {
    std::vector<index_type> offsets(states + 1);
    for (index_type i = 0; i <= states; ++i) {
        offsets[i] = i;
    }
    return offsets;
}

std::vector<index_type> rowToState(std::vector<index_type> const& choiceOffsets) {
    std::vector<index_type> result(choiceOffsets.back());
    for (index_type state = 0; state + 1 < choiceOffsets.size(); ++state) {
        for (auto row = choiceOffsets[state]; row < choiceOffsets[state + 1]; ++row) {
            result[row] = state;
        }
    }
    return result;
}

template<typename ValueType>
Model<ValueType>::Model(ModelKind kind, storage::SparseMatrix<ValueType> matrix, std::vector<index_type> choiceOffsets, StateLabeling labeling,
                        BitVector initialStates, std::map<std::string, RewardModel<ValueType>> rewardModels, std::optional<std::vector<ValueType>> exitRates)
    : modelKind(kind),
      transitions(std::move(matrix)),
      offsets(std::move(choiceOffsets)),
      stateLabeling(std::move(labeling)),
      initial(std::move(initialStates)),
      rewards(std::move(rewardModels)),
      rates(std::move(exitRates)) {
    validate();
}

template<typename ValueType>
Model<ValueType> Model<ValueType>::deterministic(ModelKind kind, storage::SparseMatrix<ValueType> matrix, StateLabeling labeling, BitVector initialStates,
                                                 std::map<std::string, RewardModel<ValueType>> rewardModels, std::optional<std::vector<ValueType>> exitRates) {
    auto offsets = identityOffsets(matrix.rows());
    return Model(kind, std::move(matrix), std::move(offsets), std::move(labeling), std::move(initialStates), std::move(rewardModels), std::move(exitRates));
}

template<typename ValueType>
RewardModel<ValueType> const& Model<ValueType>::rewardModel(std::string const& name) const {
    if (name.empty()) {
        if (rewards.size() == 1) {
            return rewards.begin()->second;
        }
        throw Error(ErrorCode::MissingRewardModel,
                    rewards.empty() ? "model has no reward model" : "model has several reward models; the property must name one");
    }
    auto it = rewards.find(name);
    if (it == rewards.end()) {
        throw Error(ErrorCode::MissingRewardModel, "unknown reward model '" + name + "'");
    }
    return it->second;
}

template<typename ValueType>
void Model<ValueType>::validate() const {
    if (offsets.empty() || offsets.front() != 0 || offsets.back() != transitions.rows()) {
        throw Error(ErrorCode::InvalidModel, "choice offsets do not cover the matrix rows");
    }
    index_type const states = numberOfStates();
    if (transitions.cols() != states) {
        throw Error(ErrorCode::InvalidModel, "matrix has " + std::to_string(transitions.cols()) + " columns but the model has " + std::to_string(states) + " states");
    }
    for (index_type s = 0; s < states; ++s) {
        if (offsets[s + 1] <= offsets[s]) {
            throw Error(ErrorCode::DeadlockState, "state " + std::to_string(s) + " has no choice");
        }
        if (modelKind != ModelKind::Mdp && offsets[s + 1] != offsets[s] + 1) {
            throw Error(ErrorCode::InvalidModel, "deterministic model with several choices in state " + std::to_string(s));
        }
    }

    auto const sums = storage::rowSums(transitions);
    auto const owner = rowToState(offsets);
    for (index_type row = 0; row < transitions.rows(); ++row) {
        if (transitions.row(row).size() == 0) {
            throw Error(ErrorCode::DeadlockState, "state " + std::to_string(owner[row]) + " has no outgoing transition");
        }
        for (auto const& value : transitions.row(row).values) {
            if (value < 0) {
                throw Error(ErrorCode::NonStochasticRow, "negative probability in state " + std::to_string(owner[row]));
            }
        }
        bool stochastic;
        if constexpr (NumberTraits<ValueType>::IsExact) {
            stochastic = sums[row] == 1;
        } else {
            stochastic = std::fabs(sums[row] - 1.0) <= kStochasticTolerance;
        }
        if (!stochastic) {
            throw Error(ErrorCode::NonStochasticRow,
                        "row " + std::to_string(row) + " of state " + std::to_string(owner[row]) + " sums to " + utility::toRoundTripString(sums[row]));
        }
    }

    if (stateLabeling.numberOfStates() != states) {
        throw Error(ErrorCode::InvalidModel, "labeling size does not match the state count");
    }
    if (initial.size() != states || initial.empty()) {
        throw Error(ErrorCode::InvalidModel, "the model needs at least one initial state");
    }
    for (auto const& [name, reward] : rewards) {
        if (reward.hasStateRewards() && reward.stateRewards().size() != states) {
            throw Error(ErrorCode::InvalidModel, "state rewards of '" + name + "' have the wrong length");
        }
        if (reward.hasActionRewards() && reward.actionRewards().size() != transitions.rows()) {
            throw Error(ErrorCode::InvalidModel, "action rewards of '" + name + "' have the wrong length");
        }
    }
    if (modelKind == ModelKind::Ctmc) {
        if (!rates || rates->size() != states) {
            throw Error(ErrorCode::InvalidModel, "a CTMC needs one exit rate per state");
        }
        for (index_type s = 0; s < states; ++s) {
            if (!((*rates)[s] > 0) || !utility::isFinite((*rates)[s])) {
                throw Error(ErrorCode::InvalidModel, "exit rate of state " + std::to_string(s) + " must be positive");
            }
        }
    } else if (rates) {
        throw Error(ErrorCode::InvalidModel, "exit rates are only meaningful for CTMCs");
    }
}

template<typename To, typename From>
Model<To> convertModel(Model<From> const& model) {
    std::map<std::string, RewardModel<To>> rewards;
    for (auto const& [name, reward] : model.rewardModels()) {
        std::optional<std::vector<To>> stateRewards;
        std::optional<std::vector<To>> actionRewards;
        if (reward.hasStateRewards()) {
            stateRewards = storage::convertVector<To>(reward.stateRewards());
        }
        if (reward.hasActionRewards()) {
            actionRewards = storage::convertVector<To>(reward.actionRewards());
        }
        rewards.emplace(name, RewardModel<To>(name, std::move(stateRewards), std::move(actionRewards)));
    }
    std::optional<std::vector<To>> rates;
    if (model.hasExitRates()) {
        rates = storage::convertVector<To>(model.exitRates());
    }
    return Model<To>(model.kind(), storage::convertMatrix<To>(model.matrix()), model.choiceOffsets(), model.labeling(), model.initialStates(), std::move(rewards),
                     std::move(rates));
}

template class Model<double>;
template class Model<Rational>;
template Model<double> convertModel<double, Rational>(Model<Rational> const&);
template Model<Rational> convertModel<Rational, double>(Model<double> const&);
template Model<double> convertModel<double, double>(Model<double> const&);
template Model<Rational> convertModel<Rational, Rational>(Model<Rational> const&);

}  // namespace stormlet::models
