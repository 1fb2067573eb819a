#include "stormlet/prism/Explorer.h"

#include <algorithm>

#include "stormlet/prism/Evaluator.h"
#include "stormlet/utility/Exceptions.h"

namespace stormlet::prism {

namespace {

using storage::index_type;
using storage::MatrixEntry;

/// A position in the choice order: an unlabelled command, or every combination of an action.
struct Slot {
    std::size_t module = 0;
    std::size_t command = 0;
    /// Index into the action list, or npos for an unlabelled command.
    std::size_t action = std::string::npos;
};

struct CommandRef {
    std::size_t module;
    std::size_t command;
};

template<typename ValueType>
struct Branch {
    ValueType weight;
    std::vector<std::int64_t> target;
};

template<typename ValueType>
class Explorer {
   public:
    Explorer(CheckedProgram const& program, ExplorationOptions const& options) : program(program), options(options) {
        std::vector<bool> placed(program.actions.size(), false);
        participants.resize(program.actions.size());
        for (std::size_t m = 0; m < program.modules.size(); ++m) {
            auto const& commands = program.modules[m].commands;
            for (std::size_t c = 0; c < commands.size(); ++c) {
                if (commands[c].action.empty()) {
                    slots.push_back({m, c, std::string::npos});
                    continue;
                }
                std::size_t const a = actionIndex(commands[c].action);
                if (!placed[a]) {
                    placed[a] = true;
                    slots.push_back({m, c, a});
                }
                auto& modules = participants[a];
                if (modules.empty() || modules.back().first != m) {
                    modules.push_back({m, {}});
                }
                modules.back().second.push_back(c);
            }
        }
    }

    ExploredModel<ValueType> run() {
        std::vector<std::int64_t> initial;
        for (auto const& variable : program.variables) {
            initial.push_back(variable.initial);
        }
        StateMap states(program.variables);
        states.insert(initial);

        models::ModelKind const kind = program.modelType;
        std::vector<MatrixEntry<ValueType>> entries;
        std::vector<index_type> offsets{0};
        std::vector<ValueType> exitRates;
        std::vector<bool> deadlocks;
        std::size_t const blocks = program.rewards.size();
        std::vector<std::vector<ValueType>> stateRewards(blocks);
        std::vector<std::vector<ValueType>> actionRewards(blocks);

        std::vector<std::int64_t> valuation;
        for (std::uint64_t state = 0; state < states.size(); ++state) {
            states.valuation(state, valuation);
            auto const combined = enabledCommands(valuation);
            index_type row = offsets.back();
            deadlocks.push_back(combined.empty());

            for (std::size_t b = 0; b < blocks; ++b) {
                stateRewards[b].push_back(stateReward(program.rewards[b], valuation, states, state));
            }

            if (combined.empty()) {
                if (!options.fixDeadlocks) {
                    throw Error(ErrorCode::DeadlockState, "state " + states.toString(state) + " has no enabled command");
                }
                entries.push_back({row, state, utility::one<ValueType>()});
                offsets.push_back(row + 1);
                if (kind == models::ModelKind::Ctmc) {
                    exitRates.push_back(utility::one<ValueType>());
                }
                for (std::size_t b = 0; b < blocks; ++b) {
                    actionRewards[b].push_back(utility::zero<ValueType>());
                }
                continue;
            }

            std::vector<std::vector<Branch<ValueType>>> distributions;
            std::vector<ValueType> totals;
            for (auto const& commands : combined) {
                distributions.push_back(distribution(commands, valuation, states, state));
                ValueType total = utility::zero<ValueType>();
                for (auto const& branch : distributions.back()) {
                    total += branch.weight;
                }
                totals.push_back(total);
            }

            auto const targetIndex = [&](std::vector<std::int64_t> const& target) {
                auto const [index, inserted] = states.insert(target);
                if (inserted && states.size() > options.maxStates) {
                    throw Error(ErrorCode::StateLimitExceeded, "state space exceeds the limit of " + std::to_string(options.maxStates) + " states");
                }
                return index;
            };

            if (kind == models::ModelKind::Mdp) {
                for (std::size_t c = 0; c < combined.size(); ++c) {
                    for (auto const& branch : distributions[c]) {
                        entries.push_back({row, targetIndex(branch.target), branch.weight});
                    }
                    for (std::size_t b = 0; b < blocks; ++b) {
                        actionRewards[b].push_back(actionReward(program.rewards[b], combined[c], valuation, states, state));
                    }
                    ++row;
                }
                offsets.push_back(row);
                continue;
            }

            ValueType sum = utility::zero<ValueType>();
            for (auto const& total : totals) {
                sum += total;
            }
            ValueType scale;
            if (kind == models::ModelKind::Dtmc) {
                scale = utility::one<ValueType>() / ValueType(static_cast<double>(combined.size()));
            } else {
                if (utility::isZero(sum)) {
                    throw Error(ErrorCode::DeadlockState, "state " + states.toString(state) + " has only zero-rate transitions");
                }
                scale = utility::one<ValueType>() / sum;
                exitRates.push_back(sum);
            }
            for (std::size_t c = 0; c < combined.size(); ++c) {
                for (auto const& branch : distributions[c]) {
                    ValueType const probability = kind == models::ModelKind::Dtmc ? branch.weight / ValueType(static_cast<double>(combined.size()))
                                                                                   : branch.weight / sum;
                    entries.push_back({row, targetIndex(branch.target), probability});
                }
            }
            for (std::size_t b = 0; b < blocks; ++b) {
                ValueType reward = utility::zero<ValueType>();
                for (std::size_t c = 0; c < combined.size(); ++c) {
                    ValueType const value = actionReward(program.rewards[b], combined[c], valuation, states, state);
                    if (!utility::isZero(value)) {
                        reward += kind == models::ModelKind::Dtmc ? ValueType(value * scale) : ValueType(value * (totals[c] / sum));
                    }
                }
                actionRewards[b].push_back(reward);
            }
            offsets.push_back(row + 1);
        }

        index_type const stateCount = states.size();
        auto matrix = storage::buildSparse(std::move(entries), offsets.back(), stateCount);
        BitVector deadlockStates(stateCount);
        for (index_type s = 0; s < stateCount; ++s) {
            if (deadlocks[s]) {
                deadlockStates.set(s);
            }
        }

        std::map<std::string, models::RewardModel<ValueType>> rewardModels;
        for (std::size_t b = 0; b < blocks; ++b) {
            auto const& items = program.rewards[b].items;
            bool const hasState = std::any_of(items.begin(), items.end(), [](CheckedRewardItem const& item) { return !item.action; });
            bool const hasAction = std::any_of(items.begin(), items.end(), [](CheckedRewardItem const& item) { return item.action.has_value(); });
            std::optional<std::vector<ValueType>> stateVector;
            std::optional<std::vector<ValueType>> actionVector;
            if (hasState || !hasAction) {
                stateVector = std::move(stateRewards[b]);
            }
            if (hasAction) {
                actionVector = std::move(actionRewards[b]);
            }
            rewardModels.emplace(program.rewards[b].name, models::RewardModel<ValueType>(program.rewards[b].name, std::move(stateVector), std::move(actionVector)));
        }

        BitVector initialStates(stateCount);
        initialStates.set(0);
        auto labeling = buildLabeling(program, states, deadlockStates);
        std::optional<std::vector<ValueType>> rates;
        if (kind == models::ModelKind::Ctmc) {
            rates = std::move(exitRates);
        }
        models::Model<ValueType> model(kind, std::move(matrix), std::move(offsets), std::move(labeling), std::move(initialStates), std::move(rewardModels),
                                       std::move(rates));
        return {std::move(model), std::move(states)};
    }

   private:
    std::size_t actionIndex(std::string const& action) const {
        return static_cast<std::size_t>(std::find(program.actions.begin(), program.actions.end(), action) - program.actions.begin());
    }

    CheckedCommand const& command(CommandRef const& ref) const {
        return program.modules[ref.module].commands[ref.command];
    }

    std::vector<std::vector<CommandRef>> enabledCommands(std::vector<std::int64_t> const& valuation) const {
        std::vector<std::vector<CommandRef>> result;
        for (auto const& slot : slots) {
            if (slot.action == std::string::npos) {
                if (evaluateBool<ValueType>(program.modules[slot.module].commands[slot.command].guard, valuation)) {
                    result.push_back({{slot.module, slot.command}});
                }
                continue;
            }
            std::vector<std::vector<CommandRef>> perModule;
            bool blocked = false;
            for (auto const& [module, commands] : participants[slot.action]) {
                std::vector<CommandRef> enabled;
                for (std::size_t c : commands) {
                    if (evaluateBool<ValueType>(program.modules[module].commands[c].guard, valuation)) {
                        enabled.push_back({module, c});
                    }
                }
                if (enabled.empty()) {
                    blocked = true;
                    break;
                }
                perModule.push_back(std::move(enabled));
            }
            if (blocked) {
                continue;
            }
            std::vector<std::size_t> cursor(perModule.size(), 0);
            while (true) {
                std::vector<CommandRef> combination;
                for (std::size_t i = 0; i < perModule.size(); ++i) {
                    combination.push_back(perModule[i][cursor[i]]);
                }
                result.push_back(std::move(combination));
                std::size_t i = perModule.size();
                while (i > 0) {
                    --i;
                    if (++cursor[i] < perModule[i].size()) {
                        break;
                    }
                    cursor[i] = 0;
                    if (i == 0) {
                        i = perModule.size() + 1;
                        break;
                    }
                }
                if (i == perModule.size() + 1 || perModule.empty()) {
                    break;
                }
            }
        }
        return result;
    }

    /// Product of the participating commands' update distributions.
    std::vector<Branch<ValueType>> distribution(std::vector<CommandRef> const& commands, std::vector<std::int64_t> const& valuation, StateMap const& states,
                                                std::uint64_t state) const {
        std::vector<Branch<ValueType>> branches{{utility::one<ValueType>(), valuation}};
        bool const probabilistic = program.modelType != models::ModelKind::Ctmc;
        for (auto const& ref : commands) {
            auto const& cmd = command(ref);
            std::vector<ValueType> weights;
            ValueType total = utility::zero<ValueType>();
            for (auto const& update : cmd.updates) {
                ValueType const weight = evaluateNumber<ValueType>(update.weight, valuation);
                if (weight < 0 || !utility::isFinite(weight)) {
                    throw SourceError(ErrorCode::NonNormalizedDistribution,
                                      "update weight " + utility::toDisplayString(weight) + " is invalid in state " + states.toString(state), update.line);
                }
                weights.push_back(weight);
                total += weight;
            }
            if (probabilistic) {
                if (utility::abs(utility::toDouble(total) - 1.0) > models::kStochasticTolerance) {
                    throw SourceError(ErrorCode::NonNormalizedDistribution,
                                      "update probabilities sum to " + utility::toDisplayString(total) + " in state " + states.toString(state), cmd.line, cmd.column);
                }
                if constexpr (NumberTraits<ValueType>::IsExact) {
                    if (total != 1) {
                        for (auto& weight : weights) {
                            weight /= total;
                        }
                    }
                }
            }

            std::vector<Branch<ValueType>> next;
            for (auto const& branch : branches) {
                for (std::size_t u = 0; u < cmd.updates.size(); ++u) {
                    if (utility::isZero(weights[u])) {
                        continue;
                    }
                    Branch<ValueType> extended{branch.weight * weights[u], branch.target};
                    for (auto const& assignment : cmd.updates[u].assignments) {
                        auto const value = evaluate<ValueType>(assignment.expression, valuation);
                        std::int64_t const assigned = value.type == ExpressionType::Bool ? (value.boolean ? 1 : 0) : value.integer;
                        auto const& variable = program.variables[assignment.slot];
                        if (assigned < variable.lower || assigned > variable.upper) {
                            throw SourceError(ErrorCode::OutOfBoundsAssignment,
                                              "assignment " + variable.name + "'=" + std::to_string(assigned) + " leaves [" + std::to_string(variable.lower) + ".." +
                                                  std::to_string(variable.upper) + "] in state " + states.toString(state),
                                              cmd.updates[u].line);
                        }
                        extended.target[assignment.slot] = assigned;
                    }
                    next.push_back(std::move(extended));
                }
            }
            branches = std::move(next);
        }
        return branches;
    }

    ValueType stateReward(CheckedRewardBlock const& block, std::vector<std::int64_t> const& valuation, StateMap const& states, std::uint64_t state) const {
        ValueType total = utility::zero<ValueType>();
        for (auto const& item : block.items) {
            if (!item.action && evaluateBool<ValueType>(item.guard, valuation)) {
                total += checkedReward(block, item, valuation, states, state);
            }
        }
        return total;
    }

    ValueType actionReward(CheckedRewardBlock const& block, std::vector<CommandRef> const& combined, std::vector<std::int64_t> const& valuation,
                           StateMap const& states, std::uint64_t state) const {
        std::string const& action = command(combined.front()).action;
        ValueType total = utility::zero<ValueType>();
        for (auto const& item : block.items) {
            if (item.action && *item.action == action && evaluateBool<ValueType>(item.guard, valuation)) {
                total += checkedReward(block, item, valuation, states, state);
            }
        }
        return total;
    }

    ValueType checkedReward(CheckedRewardBlock const& block, CheckedRewardItem const& item, std::vector<std::int64_t> const& valuation, StateMap const& states,
                            std::uint64_t state) const {
        ValueType const value = evaluateNumber<ValueType>(item.value, valuation);
        if (value < 0 || !utility::isFinite(value)) {
            throw Error(ErrorCode::NegativeReward,
                        "reward structure '" + block.name + "' yields " + utility::toDisplayString(value) + " in state " + states.toString(state));
        }
        return value;
    }

    CheckedProgram const& program;
    ExplorationOptions options;
    std::vector<Slot> slots;
    /// Per action: participating modules with their commands for that action.
    std::vector<std::vector<std::pair<std::size_t, std::vector<std::size_t>>>> participants;
};

}  // namespace

models::StateLabeling buildLabeling(CheckedProgram const& program, StateMap const& states, BitVector const& deadlocks) {
    models::StateLabeling labeling(states.size());
    BitVector initial(states.size());
    if (states.size() > 0) {
        initial.set(0);
    }
    labeling.addLabel("init", std::move(initial));
    labeling.addLabel("deadlock", deadlocks);
    std::vector<std::int64_t> valuation;
    for (auto const& label : program.labels) {
        BitVector satisfying(states.size());
        for (std::uint64_t state = 0; state < states.size(); ++state) {
            states.valuation(state, valuation);
            if (evaluateBool<double>(label.expression, valuation)) {
                satisfying.set(state);
            }
        }
        labeling.addLabel(label.name, std::move(satisfying));
    }
    return labeling;
}

template<typename ValueType>
ExploredModel<ValueType> explore(CheckedProgram const& program, ExplorationOptions const& options) {
    return Explorer<ValueType>(program, options).run();
}

template ExploredModel<double> explore(CheckedProgram const&, ExplorationOptions const&);
template ExploredModel<Rational> explore(CheckedProgram const&, ExplorationOptions const&);

}  // namespace stormlet::prism
