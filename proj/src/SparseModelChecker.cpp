#include "stormlet/modelchecker/SparseModelChecker.h"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>
#include <limits>

#include "stormlet/graph/Precomputation.h"
#include "stormlet/solver/FoxGlynn.h"
#include "stormlet/solver/LinearEquationSolver.h"
#include "stormlet/solver/MinMaxSolver.h"
#include "stormlet/solver/Multiply.h"
#include "stormlet/utility/Exceptions.h"

namespace stormlet::modelchecker {

using graph::TransitionGraph;
using models::Model;
using models::ModelKind;
using storage::kNoIndex;
using storage::SparseMatrix;

namespace {

template<typename ValueType>
std::vector<ValueType> indicator(BitVector const& set) {
    std::vector<ValueType> result(set.size(), utility::zero<ValueType>());
    set.forEachSet([&](index_type s) { result[s] = utility::one<ValueType>(); });
    return result;
}

template<typename ValueType>
ValueType infinity() {
    if constexpr (NumberTraits<ValueType>::IsExact) {
        return utility::zero<ValueType>();
    } else {
        return std::numeric_limits<double>::infinity();
    }
}

template<typename ValueType>
ValueType undefinedValue() {
    if constexpr (NumberTraits<ValueType>::IsExact) {
        return utility::zero<ValueType>();
    } else {
        return std::numeric_limits<double>::quiet_NaN();
    }
}

template<typename ValueType>
void checkProbabilities([[maybe_unused]] std::vector<ValueType> const& values) {
#ifndef NDEBUG
    if constexpr (!NumberTraits<ValueType>::IsExact) {
        for (double v : values) {
            assert((std::isnan(v) || (v >= -1e-12 && v <= 1.0 + 1e-12)) && "probability outside [0, 1]");
        }
    }
#endif
}

/// Rows belonging to the given states.
BitVector choicesOf(std::vector<index_type> const& offsets, BitVector const& states) {
    BitVector result(offsets.back());
    states.forEachSet([&](index_type s) {
        for (auto c = offsets[s]; c < offsets[s + 1]; ++c) {
            result.set(c);
        }
    });
    return result;
}

/// Per selected row, the probability mass moving into `set`.
template<typename ValueType>
std::vector<ValueType> massInto(SparseMatrix<ValueType> const& matrix, BitVector const& rows, BitVector const& set) {
    std::vector<ValueType> result;
    result.reserve(rows.count());
    rows.forEachSet([&](index_type r) {
        auto const row = matrix.row(r);
        ValueType sum = utility::zero<ValueType>();
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (set.get(row.columns[k])) {
                sum += row.values[k];
            }
        }
        result.push_back(std::move(sum));
    });
    return result;
}

/// Choice offsets of the Bellman system over the kept rows, grouped by state.
std::vector<index_type> restrictedOffsets(std::vector<index_type> const& offsets, BitVector const& states, BitVector const& rows) {
    std::vector<index_type> result{0};
    states.forEachSet([&](index_type s) {
        index_type count = 0;
        for (auto c = offsets[s]; c < offsets[s + 1]; ++c) {
            count += rows.get(c) ? 1 : 0;
        }
        result.push_back(result.back() + count);
    });
    return result;
}

template<typename ValueType>
void scatter(std::vector<ValueType> const& source, BitVector const& states, std::vector<ValueType>& target) {
    std::size_t i = 0;
    states.forEachSet([&](index_type s) { target[s] = source[i++]; });
}

void requireKind(models::ModelKind actual, std::initializer_list<ModelKind> allowed, char const* operation) {
    for (auto kind : allowed) {
        if (kind == actual) {
            return;
        }
    }
    throw Error(ErrorCode::UnsupportedCombination, std::string(operation) + " is not available for " + std::string(models::toString(actual)) + " models");
}

void requireSize(BitVector const& set, index_type states) {
    if (set.size() != states) {
        throw Error(ErrorCode::DimensionMismatch, "state set has the wrong size");
    }
}

/// Values of left U right on a deterministic chain given by its row-per-state matrix.
template<typename ValueType>
CheckResult<ValueType> untilValues(SparseMatrix<ValueType> const& matrix, BitVector const& left, BitVector const& right, SolverEnvironment const& env) {
    index_type const n = matrix.rows();
    TransitionGraph const graph(matrix, models::identityOffsets(n));
    BitVector const prob0 = graph::prob0(graph, left, right);
    BitVector const prob1 = graph::prob1(graph, left, right, prob0);
    BitVector const maybe = ~(prob0 | prob1);

    CheckResult<ValueType> result;
    result.values = indicator<ValueType>(prob1);
    result.method = "graph";
    if (!maybe.empty()) {
        auto sub = storage::restrict(matrix, maybe, maybe);
        auto outcome = solver::solveLinear(solver::LinearSystem<ValueType>{std::move(sub.matrix), massInto(matrix, maybe, prob1)}, env);
        scatter(outcome.x, maybe, result.values);
        result.iterations = outcome.iterations;
        result.method = outcome.method;
    }
    checkProbabilities(result.values);
    return result;
}

/// Turns a local scheduler of a restricted Bellman system back into offsets of the full model.
void scatterScheduler(std::vector<index_type> const& local, BitVector const& states, BitVector const& rows, std::vector<index_type> const& offsets,
                      std::vector<index_type>& scheduler) {
    std::size_t i = 0;
    states.forEachSet([&](index_type s) {
        index_type seen = 0;
        for (auto c = offsets[s]; c < offsets[s + 1]; ++c) {
            if (rows.get(c)) {
                if (seen++ == local[i]) {
                    scheduler[s] = c - offsets[s];
                    break;
                }
            }
        }
        ++i;
    });
}

/// Converts global attractor rows of `states` into offsets among their kept rows.
std::vector<index_type> localScheduler(std::vector<index_type> const& attractor, BitVector const& states, BitVector const& rows,
                                       std::vector<index_type> const& offsets) {
    std::vector<index_type> local;
    states.forEachSet([&](index_type s) {
        index_type position = 0;
        index_type chosen = 0;
        for (auto c = offsets[s]; c < offsets[s + 1]; ++c) {
            if (!rows.get(c)) {
                continue;
            }
            if (c == attractor[s]) {
                chosen = position;
                break;
            }
            ++position;
        }
        local.push_back(chosen);
    });
    return local;
}

template<typename ValueType>
CheckResult<ValueType> solveBellman(Model<ValueType> const& model, BitVector const& states, BitVector const& rows, std::vector<ValueType> offset,
                                    OptimizationDirection direction, SolverEnvironment const& env, std::optional<std::vector<index_type>> const& attractor,
                                    bool descendFromAttractor, std::vector<ValueType>& values, std::vector<index_type>& scheduler,
                                    BitVector const* progressGoal = nullptr) {
    auto const& offsets = model.choiceOffsets();
    auto sub = storage::restrict(model.matrix(), rows, states);
    solver::BellmanSystem<ValueType> system{std::move(sub.matrix), restrictedOffsets(offsets, states, rows), std::move(offset), direction, std::nullopt};
    std::optional<std::vector<index_type>> initial;
    if (attractor) {
        initial = localScheduler(*attractor, states, rows, offsets);
    }
    if constexpr (!NumberTraits<ValueType>::IsExact) {
        if (descendFromAttractor && env.minMaxMethod == solver::MinMaxMethod::ValueIteration) {
            system.initialValues = solver::solveLinear(solver::inducedSystem(system, *initial), env).x;
        }
    }
    auto outcome = solver::solveMinMax(system, env, initial);
    scatter(outcome.x, states, values);
    scatterScheduler(*outcome.scheduler, states, rows, offsets, scheduler);
    if (progressGoal) {
        // Ties between optimal choices may keep a state inside an end component forever;
        // among the optimal choices, prefer ones that move towards the goal.
        std::vector<ValueType> choiceValues;
        solver::multiply(system.matrix, outcome.x, choiceValues, &system.offset);
        BitVector optimal(model.numberOfChoices());
        std::size_t i = 0;
        std::size_t row = 0;
        states.forEachSet([&](index_type s) {
            ValueType const& best = outcome.x[i++];
            for (auto c = offsets[s]; c < offsets[s + 1]; ++c) {
                if (!rows.get(c)) {
                    continue;
                }
                ValueType const& candidate = choiceValues[row++];
                if constexpr (NumberTraits<ValueType>::IsExact) {
                    optimal.set(c, candidate == best);
                } else {
                    double const slack = 10.0 * env.precision * std::max(1.0, std::fabs(best));
                    optimal.set(c, std::fabs(candidate - best) <= slack);
                }
            }
        });
        TransitionGraph const graph(model);
        auto const progress = graph::attractorChoices(graph, *progressGoal, states, optimal);
        states.forEachSet([&](index_type s) {
            if (progress[s] != kNoIndex) {
                scheduler[s] = progress[s] - offsets[s];
            }
        });
    }
    CheckResult<ValueType> result;
    result.iterations = outcome.iterations;
    result.method = outcome.method;
    return result;
}

template<typename ValueType>
std::vector<ValueType> choiceRewards(Model<ValueType> const& model, models::RewardModel<ValueType> const& rewards) {
    if (rewards.hasStateRewards() && rewards.stateRewards().size() != model.numberOfStates()) {
        throw Error(ErrorCode::DimensionMismatch, "state reward vector has the wrong length");
    }
    if (rewards.hasActionRewards() && rewards.actionRewards().size() != model.numberOfChoices()) {
        throw Error(ErrorCode::DimensionMismatch, "action reward vector has the wrong length");
    }
    if (!models::isContinuousTime(model.kind())) {
        return rewards.totalChoiceRewards(model.choiceOffsets());
    }
    std::vector<ValueType> result(model.numberOfStates(), utility::zero<ValueType>());
    for (index_type s = 0; s < model.numberOfStates(); ++s) {
        if (rewards.hasStateRewards()) {
            result[s] += rewards.stateRewards()[s] / model.exitRates()[s];
        }
        if (rewards.hasActionRewards()) {
            result[s] += rewards.actionRewards()[s];
        }
    }
    return result;
}

std::uint64_t stepBound(logic::Number const& bound, ModelKind kind) {
    if (bound.value < 0) {
        throw Error(ErrorCode::InvalidArgument, "bound " + bound.text + " is negative");
    }
    if (bound.value.get_den() != 1) {
        throw Error(ErrorCode::UnsupportedCombination, "time bound " + bound.text + " on a discrete-time " + std::string(models::toString(kind)) + " model");
    }
    if (!bound.value.get_num().fits_ulong_p()) {
        throw Error(ErrorCode::InvalidArgument, "step bound " + bound.text + " is too large");
    }
    return bound.value.get_num().get_ui();
}

template<typename ValueType>
bool holdsAt(CheckResult<ValueType> const& result, logic::Bound const& bound, index_type state) {
    if (result.isUndefined(state)) {
        return false;
    }
    if (result.isInfinite(state)) {
        return bound.comparison == logic::ComparisonType::Greater || bound.comparison == logic::ComparisonType::GreaterEqual;
    }
    return bound.holds(result.values[state]);
}

template<typename ValueType>
BitVector threshold(CheckResult<ValueType> const& result, logic::Bound const& bound) {
    BitVector truth(result.values.size());
    for (index_type s = 0; s < result.values.size(); ++s) {
        truth.set(s, holdsAt(result, bound, s));
    }
    return truth;
}

template<typename ValueType>
void complement(CheckResult<ValueType>& result) {
    for (auto& value : result.values) {
        value = utility::one<ValueType>() - value;
    }
    checkProbabilities(result.values);
}

template<typename ValueType>
class Dispatcher {
   public:
    Dispatcher(Model<ValueType> const& model, SolverEnvironment const& env) : model(model), env(env) {}

    BitVector states(logic::StateFormulaPtr const& formula) {
        using Kind = logic::StateFormula::Kind;
        index_type const n = model.numberOfStates();
        switch (formula->kind) {
            case Kind::States:
                requireSize(formula->states, n);
                return formula->states;
            case Kind::Boolean:
                return BitVector(n, formula->value);
            case Kind::Not:
                return ~states(formula->operands[0]);
            case Kind::And:
                return states(formula->operands[0]) & states(formula->operands[1]);
            case Kind::Or:
                return states(formula->operands[0]) | states(formula->operands[1]);
            case Kind::Probability:
            case Kind::Reward: {
                auto const& bound = formula->operatorBound();
                if (!bound) {
                    throw Error(ErrorCode::UnsupportedCombination, "nested operator without a bound: " + logic::toString(*formula));
                }
                return threshold(quantitative(*formula), *bound);
            }
            case Kind::Label:
            case Kind::Predicate:
                break;
        }
        throw Error(ErrorCode::InvalidArgument, "formula is not resolved against the model: " + logic::toString(*formula));
    }

    CheckResult<ValueType> top(logic::StateFormulaPtr const& formula) {
        if (!formula->isOperator()) {
            CheckResult<ValueType> result;
            result.truth = states(formula);
            result.method = "graph";
            return result;
        }
        auto result = quantitative(*formula);
        if (auto const& bound = formula->operatorBound()) {
            result.truth = threshold(result, *bound);
        }
        return result;
    }

   private:
    CheckResult<ValueType> quantitative(logic::StateFormula const& formula) {
        if (formula.kind == logic::StateFormula::Kind::Probability) {
            return probability(*formula.probability);
        }
        return reward(*formula.reward);
    }

    CheckResult<ValueType> probability(logic::ProbabilityOperator const& op) {
        using PathKind = logic::PathFormula::Kind;
        if (op.condition) {
            return conditional(op.path, *op.condition);
        }
        auto const& path = op.path;
        index_type const n = model.numberOfStates();
        if (path.kind == PathKind::Next) {
            if (path.bound) {
                throw Error(ErrorCode::UnsupportedCombination, "bounded next operator");
            }
            return checkNext(model, states(path.right), op.optimum, env);
        }
        if (path.kind == PathKind::Globally) {
            auto const optimum = op.optimum ? std::optional(solver::invert(*op.optimum)) : std::nullopt;
            auto result = until(BitVector(n, true), ~states(path.right), path.bound, optimum);
            complement(result);
            return result;
        }
        return until(states(path.left), states(path.right), path.bound, op.optimum);
    }

    CheckResult<ValueType> until(BitVector const& left, BitVector const& right, std::optional<logic::Number> const& bound,
                                 std::optional<OptimizationDirection> optimum) {
        if (models::isContinuousTime(model.kind())) {
            if (bound) {
                if (bound->value < 0) {
                    throw Error(ErrorCode::InvalidArgument, "time bound " + bound->text + " is negative");
                }
                return checkTimeBoundedUntilCtmc(model, left, right, bound->toDouble(), env);
            }
            return checkUntilCtmcUnbounded(model, left, right, env);
        }
        if (bound) {
            return checkBoundedUntil(model, left, right, stepBound(*bound, model.kind()), optimum, env);
        }
        if (models::isNondeterministic(model.kind())) {
            return checkUntilMdp(model, left, right, *optimum, env);
        }
        return checkUntil(model, left, right, env);
    }

    std::pair<BitVector, BitVector> untilOperands(logic::PathFormula const& path) {
        if (path.kind != logic::PathFormula::Kind::Until || path.bound) {
            throw Error(ErrorCode::UnsupportedCombination, "conditional probabilities need unbounded until or eventually formulas");
        }
        return {states(path.left), states(path.right)};
    }

    CheckResult<ValueType> conditional(logic::PathFormula const& objective, logic::PathFormula const& condition) {
        if (model.kind() != ModelKind::Dtmc) {
            throw Error(ErrorCode::UnsupportedCombination, "conditional probabilities are only supported on DTMCs");
        }
        auto const [objectiveLeft, objectiveRight] = untilOperands(objective);
        auto const [conditionLeft, conditionRight] = untilOperands(condition);
        return checkConditional(model, objectiveLeft, objectiveRight, conditionLeft, conditionRight, env);
    }

    CheckResult<ValueType> reward(logic::RewardOperator const& op) {
        auto const& rewards = model.rewardModel(op.rewardModel);
        if (op.target == logic::RewardOperator::Target::Cumulative) {
            if (models::isContinuousTime(model.kind())) {
                throw Error(ErrorCode::ContinuousTimeUnsupported, "cumulative rewards are not supported on CTMCs");
            }
            return checkCumulativeReward(model, rewards, stepBound(*op.cumulativeBound, model.kind()), op.optimum, env);
        }
        BitVector const goal = states(op.goal);
        if (models::isNondeterministic(model.kind())) {
            return checkReachRewardMdp(model, rewards, goal, *op.optimum, env);
        }
        return checkReachReward(model, rewards, goal, env);
    }

    Model<ValueType> const& model;
    SolverEnvironment const& env;
};

}  // namespace

template<typename ValueType>
CheckResult<ValueType> check(Model<ValueType> const& model, logic::StateFormulaPtr const& formula, SolverEnvironment const& env) {
    env.validate();
    auto const start = std::chrono::steady_clock::now();
    auto result = Dispatcher<ValueType>(model, env).top(formula);
    result.timeMs = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return result;
}

template<typename ValueType>
BitVector checkStates(Model<ValueType> const& model, logic::StateFormulaPtr const& formula, SolverEnvironment const& env) {
    env.validate();
    return Dispatcher<ValueType>(model, env).states(formula);
}

template<typename ValueType>
CheckResult<ValueType> checkNext(Model<ValueType> const& model, BitVector const& target, std::optional<OptimizationDirection> optimum,
                                 SolverEnvironment const& env) {
    requireSize(target, model.numberOfStates());
    CheckResult<ValueType> result;
    auto const x = indicator<ValueType>(target);
    if (models::isNondeterministic(model.kind())) {
        if (!optimum) {
            throw Error(ErrorCode::OptimumMissingForMdp, "next on an MDP needs min or max");
        }
        std::vector<index_type> scheduler;
        solver::multiplyAndReduce(model.matrix(), model.choiceOffsets(), x, *optimum, result.values, static_cast<std::vector<ValueType> const*>(nullptr), &scheduler);
        result.scheduler = std::move(scheduler);
    } else {
        solver::multiply(model.matrix(), x, result.values, static_cast<std::vector<ValueType> const*>(nullptr), env.threads);
    }
    result.iterations = 1;
    result.method = "matrix-vector";
    checkProbabilities(result.values);
    return result;
}

template<typename ValueType>
CheckResult<ValueType> checkBoundedUntil(Model<ValueType> const& model, BitVector const& left, BitVector const& right, std::uint64_t steps,
                                         std::optional<OptimizationDirection> optimum, SolverEnvironment const& env) {
    requireKind(model.kind(), {ModelKind::Dtmc, ModelKind::Mdp}, "step-bounded until");
    index_type const n = model.numberOfStates();
    requireSize(left, n);
    requireSize(right, n);
    bool const nondeterministic = models::isNondeterministic(model.kind());
    if (nondeterministic && !optimum) {
        throw Error(ErrorCode::OptimumMissingForMdp, "bounded until on an MDP needs min or max");
    }
    BitVector const maybe = left - right;
    std::vector<ValueType> x = indicator<ValueType>(right);
    std::vector<ValueType> next;
    for (std::uint64_t step = 0; step < steps; ++step) {
        if (nondeterministic) {
            solver::multiplyAndReduce(model.matrix(), model.choiceOffsets(), x, *optimum, next);
        } else {
            solver::multiply(model.matrix(), x, next, static_cast<std::vector<ValueType> const*>(nullptr), env.threads);
        }
        for (index_type s = 0; s < n; ++s) {
            if (right.get(s)) {
                next[s] = utility::one<ValueType>();
            } else if (!maybe.get(s)) {
                next[s] = utility::zero<ValueType>();
            }
        }
        x.swap(next);
    }
    CheckResult<ValueType> result;
    result.values = std::move(x);
    result.iterations = steps;
    result.method = "bounded-iteration";
    checkProbabilities(result.values);
    return result;
}

template<typename ValueType>
CheckResult<ValueType> checkUntil(Model<ValueType> const& model, BitVector const& left, BitVector const& right, SolverEnvironment const& env) {
    requireKind(model.kind(), {ModelKind::Dtmc, ModelKind::Ctmc}, "deterministic until");
    requireSize(left, model.numberOfStates());
    requireSize(right, model.numberOfStates());
    return untilValues(model.matrix(), left, right, env);
}

template<typename ValueType>
CheckResult<ValueType> checkUntilMdp(Model<ValueType> const& model, BitVector const& left, BitVector const& right, OptimizationDirection direction,
                                     SolverEnvironment const& env) {
    requireKind(model.kind(), {ModelKind::Mdp}, "nondeterministic until");
    index_type const n = model.numberOfStates();
    requireSize(left, n);
    requireSize(right, n);
    auto const& offsets = model.choiceOffsets();
    TransitionGraph const graph(model);
    bool const maximize = direction == OptimizationDirection::Maximize;
    auto const qualitative = maximize ? graph::prob01Max(graph, left, right) : graph::prob01Min(graph, left, right);
    BitVector const maybe = ~(qualitative.prob0 | qualitative.prob1);

    CheckResult<ValueType> result;
    result.values = indicator<ValueType>(qualitative.prob1);
    result.method = "graph";
    std::vector<index_type> scheduler(n, 0);
    if (maximize) {
        // Stay in prob1E while moving towards the target.
        auto const toTarget = graph::attractorChoices(graph, right, qualitative.prob1 - right, graph::choicesStayingIn(graph, qualitative.prob1));
        (qualitative.prob1 - right).forEachSet([&](index_type s) { scheduler[s] = toTarget[s] - offsets[s]; });
    } else {
        BitVector const avoiding = graph::choicesStayingIn(graph, qualitative.prob0);
        (qualitative.prob0 - right).forEachSet([&](index_type s) {
            for (auto c = offsets[s]; c < offsets[s + 1]; ++c) {
                if (avoiding.get(c)) {
                    scheduler[s] = c - offsets[s];
                    break;
                }
            }
        });
    }
    if (!maybe.empty()) {
        BitVector const rows = choicesOf(offsets, maybe);
        std::optional<std::vector<index_type>> attractor;
        if (maximize) {
            attractor = graph::attractorChoices(graph, qualitative.prob1, maybe);
        }
        auto solved = solveBellman(model, maybe, rows, massInto(model.matrix(), rows, qualitative.prob1), direction, env, attractor, false, result.values,
                                   scheduler, maximize ? &qualitative.prob1 : nullptr);
        result.iterations = solved.iterations;
        result.method = solved.method;
    }
    result.scheduler = std::move(scheduler);
    checkProbabilities(result.values);
    return result;
}

template<typename ValueType>
CheckResult<ValueType> checkReachReward(Model<ValueType> const& model, models::RewardModel<ValueType> const& rewards, BitVector const& target,
                                        SolverEnvironment const& env) {
    requireKind(model.kind(), {ModelKind::Dtmc, ModelKind::Ctmc}, "deterministic reachability reward");
    index_type const n = model.numberOfStates();
    requireSize(target, n);
    TransitionGraph const graph(model);
    BitVector const all(n, true);
    BitVector const prob1 = graph::prob1(graph, all, target, graph::prob0(graph, all, target));
    BitVector const maybe = prob1 - target;

    CheckResult<ValueType> result;
    result.values.assign(n, utility::zero<ValueType>());
    result.infinite = ~prob1;
    result.infinite.forEachSet([&](index_type s) { result.values[s] = infinity<ValueType>(); });
    result.method = "graph";
    if (!maybe.empty()) {
        auto const r = choiceRewards(model, rewards);
        std::vector<ValueType> offset;
        maybe.forEachSet([&](index_type s) { offset.push_back(r[s]); });
        auto sub = storage::restrict(model.matrix(), maybe, maybe);
        auto outcome = solver::solveLinear(solver::LinearSystem<ValueType>{std::move(sub.matrix), std::move(offset)}, env);
        scatter(outcome.x, maybe, result.values);
        result.iterations = outcome.iterations;
        result.method = outcome.method;
    }
    return result;
}

template<typename ValueType>
CheckResult<ValueType> checkReachRewardMdp(Model<ValueType> const& model, models::RewardModel<ValueType> const& rewards, BitVector const& target,
                                           OptimizationDirection direction, SolverEnvironment const& env) {
    requireKind(model.kind(), {ModelKind::Mdp}, "nondeterministic reachability reward");
    index_type const n = model.numberOfStates();
    requireSize(target, n);
    auto const& offsets = model.choiceOffsets();
    TransitionGraph const graph(model);
    BitVector const all(n, true);
    bool const maximize = direction == OptimizationDirection::Maximize;
    // Rmax is finite only where every scheduler reaches the target almost surely (prob1A),
    // Rmin where some scheduler does (prob1E).
    BitVector const finite = maximize ? graph::prob01Min(graph, all, target).prob1 : graph::prob01Max(graph, all, target).prob1;
    BitVector const maybe = finite - target;

    CheckResult<ValueType> result;
    result.values.assign(n, utility::zero<ValueType>());
    result.infinite = ~finite;
    result.infinite.forEachSet([&](index_type s) { result.values[s] = infinity<ValueType>(); });
    result.method = "graph";
    std::vector<index_type> scheduler(n, 0);
    if (!maybe.empty()) {
        BitVector const rows = choicesOf(offsets, maybe) & graph::choicesStayingIn(graph, finite);
        auto const r = choiceRewards(model, rewards);
        std::vector<ValueType> offset;
        rows.forEachSet([&](index_type c) { offset.push_back(r[c]); });
        std::optional<std::vector<index_type>> attractor;
        if (!maximize) {
            // A proper policy: zero-reward end components make the zero start vector and the
            // lowest-index policy unsound for Rmin.
            attractor = graph::attractorChoices(graph, target, maybe, rows);
        }
        auto solved = solveBellman(model, maybe, rows, std::move(offset), direction, env, attractor, !maximize, result.values, scheduler,
                                   maximize ? nullptr : &target);
        result.iterations = solved.iterations;
        result.method = solved.method;
    }
    result.scheduler = std::move(scheduler);
    return result;
}

template<typename ValueType>
CheckResult<ValueType> checkCumulativeReward(Model<ValueType> const& model, models::RewardModel<ValueType> const& rewards, std::uint64_t steps,
                                             std::optional<OptimizationDirection> optimum, SolverEnvironment const& env) {
    if (models::isContinuousTime(model.kind())) {
        throw Error(ErrorCode::ContinuousTimeUnsupported, "cumulative rewards are not supported on CTMCs");
    }
    bool const nondeterministic = models::isNondeterministic(model.kind());
    if (nondeterministic && !optimum) {
        throw Error(ErrorCode::OptimumMissingForMdp, "cumulative reward on an MDP needs min or max");
    }
    auto const r = choiceRewards(model, rewards);
    std::vector<ValueType> x(model.numberOfStates(), utility::zero<ValueType>());
    std::vector<ValueType> next;
    for (std::uint64_t step = 0; step < steps; ++step) {
        if (nondeterministic) {
            solver::multiplyAndReduce(model.matrix(), model.choiceOffsets(), x, *optimum, next, &r);
        } else {
            solver::multiply(model.matrix(), x, next, &r, env.threads);
        }
        x.swap(next);
    }
    CheckResult<ValueType> result;
    result.values = std::move(x);
    result.iterations = steps;
    result.method = "bounded-iteration";
    return result;
}

template<typename ValueType>
CheckResult<ValueType> checkTimeBoundedUntilCtmc(Model<ValueType> const& model, BitVector const& left, BitVector const& right, double time,
                                                 SolverEnvironment const& env) {
    requireKind(model.kind(), {ModelKind::Ctmc}, "time-bounded until");
    index_type const n = model.numberOfStates();
    requireSize(left, n);
    requireSize(right, n);
    if (!(time >= 0.0) || !std::isfinite(time)) {
        throw Error(ErrorCode::InvalidArgument, "time bound must be finite and non-negative");
    }
    if constexpr (NumberTraits<ValueType>::IsExact) {
        throw Error(ErrorCode::UnsupportedCombination, "time-bounded until on CTMCs has no exact mode");
    } else {
        CheckResult<double> result;
        result.values = indicator<double>(right);
        result.method = "uniformization";
        TransitionGraph const graph(model);
        BitVector const maybe = (left - right) - graph::prob0(graph, left, right);
        if (time == 0.0 || maybe.empty()) {
            return result;
        }
        auto const& rates = model.exitRates();
        double maxRate = 0.0;
        maybe.forEachSet([&](index_type s) { maxRate = std::max(maxRate, rates[s]); });
        double const q = 1.02 * maxRate;

        // Uniformised chain over the maybe states; mass into `right` goes to the offset.
        std::vector<index_type> position(n, kNoIndex);
        index_type m = 0;
        maybe.forEachSet([&](index_type s) { position[s] = m++; });
        std::vector<index_type> rowOffsets{0};
        std::vector<index_type> columns;
        std::vector<double> values;
        std::vector<double> offset;
        maybe.forEachSet([&](index_type s) {
            double const factor = rates[s] / q;
            auto const row = model.matrix().row(s);
            double stay = 1.0 - factor;
            double toRight = 0.0;
            std::vector<std::pair<index_type, double>> entries;
            for (std::size_t k = 0; k < row.size(); ++k) {
                index_type const j = row.columns[k];
                if (j == s) {
                    stay += factor * row.values[k];
                } else if (position[j] != kNoIndex) {
                    entries.emplace_back(position[j], factor * row.values[k]);
                } else if (right.get(j)) {
                    toRight += factor * row.values[k];
                }
            }
            entries.emplace_back(position[s], stay);
            std::sort(entries.begin(), entries.end());
            for (auto const& [column, value] : entries) {
                columns.push_back(column);
                values.push_back(value);
            }
            rowOffsets.push_back(columns.size());
            offset.push_back(toRight);
        });
        SparseMatrix<double> const uniformized(m, m, std::move(rowOffsets), std::move(columns), std::move(values));

        // Truncation error of the weights is kept well below the solver precision.
        auto const weights = solver::foxGlynn(q * time, env.precision * 1e-3);
        std::vector<double> v(m, 0.0);
        std::vector<double> accumulated(m, 0.0);
        std::vector<double> next;
        for (std::uint64_t k = 0; k <= weights.right; ++k) {
            if (k >= weights.left) {
                double const w = weights.weights[k - weights.left] / weights.totalWeight;
                for (index_type i = 0; i < m; ++i) {
                    accumulated[i] += w * v[i];
                }
            }
            if (k < weights.right) {
                solver::multiply(uniformized, v, next, &offset, env.threads);
                v.swap(next);
            }
        }
        scatter(accumulated, maybe, result.values);
        result.iterations = weights.right;
        checkProbabilities(result.values);
        return result;
    }
}

template<typename ValueType>
CheckResult<ValueType> checkUntilCtmcUnbounded(Model<ValueType> const& model, BitVector const& left, BitVector const& right, SolverEnvironment const& env) {
    requireKind(model.kind(), {ModelKind::Ctmc}, "unbounded CTMC until");
    return checkUntil(model, left, right, env);
}

namespace {

enum class Status : std::uint8_t { Pending = 0, Satisfied = 1, Violated = 2 };

Status enter(Status status, index_type state, BitVector const& left, BitVector const& right) {
    if (status != Status::Pending) {
        return status;
    }
    if (right.get(state)) {
        return Status::Satisfied;
    }
    return left.get(state) ? Status::Pending : Status::Violated;
}

template<typename ValueType>
struct ConditionalProduct {
    SparseMatrix<ValueType> matrix;
    BitVector goal;
    /// Product state entered when starting in each original state.
    std::vector<index_type> entry;
};

template<typename ValueType>
ConditionalProduct<ValueType> buildProduct(Model<ValueType> const& model, BitVector const& objectiveLeft, BitVector const& objectiveRight,
                                           BitVector const& conditionLeft, BitVector const& conditionRight) {
    index_type const n = model.numberOfStates();
    for (auto const* set : {&objectiveLeft, &objectiveRight, &conditionLeft, &conditionRight}) {
        requireSize(*set, n);
    }
    auto key = [](index_type state, Status objective, Status condition) {
        return state * 9 + static_cast<index_type>(objective) * 3 + static_cast<index_type>(condition);
    };
    std::vector<index_type> index(n * 9, kNoIndex);
    std::vector<std::tuple<index_type, Status, Status>> productStates;
    auto lookup = [&](index_type state, Status objective, Status condition) {
        auto& slot = index[key(state, objective, condition)];
        if (slot == kNoIndex) {
            slot = productStates.size();
            productStates.emplace_back(state, objective, condition);
        }
        return slot;
    };

    ConditionalProduct<ValueType> product;
    for (index_type s = 0; s < n; ++s) {
        product.entry.push_back(lookup(s, enter(Status::Pending, s, objectiveLeft, objectiveRight), enter(Status::Pending, s, conditionLeft, conditionRight)));
    }
    std::vector<index_type> rowOffsets{0};
    std::vector<index_type> columns;
    std::vector<ValueType> values;
    std::vector<bool> goal;
    for (index_type p = 0; p < productStates.size(); ++p) {
        auto const [state, objective, condition] = productStates[p];
        bool const reached = objective == Status::Satisfied && condition == Status::Satisfied;
        goal.push_back(reached);
        if (reached || objective == Status::Violated || condition == Status::Violated) {
            columns.push_back(p);
            values.push_back(utility::one<ValueType>());
        } else {
            std::vector<std::pair<index_type, ValueType>> entries;
            auto const row = model.matrix().row(state);
            for (std::size_t k = 0; k < row.size(); ++k) {
                index_type const j = row.columns[k];
                entries.emplace_back(lookup(j, enter(objective, j, objectiveLeft, objectiveRight), enter(condition, j, conditionLeft, conditionRight)),
                                     row.values[k]);
            }
            std::sort(entries.begin(), entries.end(), [](auto const& a, auto const& b) { return a.first < b.first; });
            for (auto& [column, value] : entries) {
                columns.push_back(column);
                values.push_back(std::move(value));
            }
        }
        rowOffsets.push_back(columns.size());
    }
    index_type const size = productStates.size();
    product.matrix = SparseMatrix<ValueType>(size, size, std::move(rowOffsets), std::move(columns), std::move(values));
    product.goal = BitVector(size);
    for (index_type p = 0; p < size; ++p) {
        product.goal.set(p, goal[p]);
    }
    return product;
}

}  // namespace

template<typename ValueType>
index_type conditionalProductSize(Model<ValueType> const& model, BitVector const& objectiveLeft, BitVector const& objectiveRight,
                                  BitVector const& conditionLeft, BitVector const& conditionRight) {
    return buildProduct(model, objectiveLeft, objectiveRight, conditionLeft, conditionRight).matrix.rows();
}

template<typename ValueType>
CheckResult<ValueType> checkConditional(Model<ValueType> const& model, BitVector const& objectiveLeft, BitVector const& objectiveRight,
                                        BitVector const& conditionLeft, BitVector const& conditionRight, SolverEnvironment const& env) {
    if (model.kind() != ModelKind::Dtmc) {
        throw Error(ErrorCode::UnsupportedCombination, "conditional probabilities are only supported on DTMCs");
    }
    auto const product = buildProduct(model, objectiveLeft, objectiveRight, conditionLeft, conditionRight);
    auto const numerator = untilValues(product.matrix, BitVector(product.matrix.rows(), true), product.goal, env);
    auto const denominator = untilValues(model.matrix(), conditionLeft, conditionRight, env);

    index_type const n = model.numberOfStates();
    CheckResult<ValueType> result;
    result.values.assign(n, utility::zero<ValueType>());
    result.undefined = BitVector(n);
    for (index_type s = 0; s < n; ++s) {
        if (utility::isZero(denominator.values[s])) {
            result.undefined.set(s);
            result.values[s] = undefinedValue<ValueType>();
        } else {
            result.values[s] = numerator.values[product.entry[s]] / denominator.values[s];
        }
    }
    result.iterations = numerator.iterations + denominator.iterations;
    result.method = denominator.method == "graph" ? numerator.method : denominator.method;
    checkProbabilities(result.values);
    return result;
}

#define STORMLET_INSTANTIATE_CHECKERS(V)                                                                                                              \
    template CheckResult<V> check(Model<V> const&, logic::StateFormulaPtr const&, SolverEnvironment const&);                                        \
    template BitVector checkStates(Model<V> const&, logic::StateFormulaPtr const&, SolverEnvironment const&);                                       \
    template CheckResult<V> checkNext(Model<V> const&, BitVector const&, std::optional<OptimizationDirection>, SolverEnvironment const&);           \
    template CheckResult<V> checkBoundedUntil(Model<V> const&, BitVector const&, BitVector const&, std::uint64_t, std::optional<OptimizationDirection>, \
                                              SolverEnvironment const&);                                                                           \
    template CheckResult<V> checkUntil(Model<V> const&, BitVector const&, BitVector const&, SolverEnvironment const&);                             \
    template CheckResult<V> checkUntilMdp(Model<V> const&, BitVector const&, BitVector const&, OptimizationDirection, SolverEnvironment const&);   \
    template CheckResult<V> checkReachReward(Model<V> const&, models::RewardModel<V> const&, BitVector const&, SolverEnvironment const&);         \
    template CheckResult<V> checkReachRewardMdp(Model<V> const&, models::RewardModel<V> const&, BitVector const&, OptimizationDirection,          \
                                                SolverEnvironment const&);                                                                         \
    template CheckResult<V> checkCumulativeReward(Model<V> const&, models::RewardModel<V> const&, std::uint64_t, std::optional<OptimizationDirection>, \
                                                  SolverEnvironment const&);                                                                       \
    template CheckResult<V> checkTimeBoundedUntilCtmc(Model<V> const&, BitVector const&, BitVector const&, double, SolverEnvironment const&);     \
    template CheckResult<V> checkUntilCtmcUnbounded(Model<V> const&, BitVector const&, BitVector const&, SolverEnvironment const&);               \
    template CheckResult<V> checkConditional(Model<V> const&, BitVector const&, BitVector const&, BitVector const&, BitVector const&,             \
                                             SolverEnvironment const&);                                                                            \
    template index_type conditionalProductSize(Model<V> const&, BitVector const&, BitVector const&, BitVector const&, BitVector const&);

STORMLET_INSTANTIATE_CHECKERS(double)
STORMLET_INSTANTIATE_CHECKERS(Rational)

}  // namespace stormlet::modelchecker
