#include "stormlet/solver/MinMaxSolver.h"

#include <cassert>

#include "stormlet/solver/Multiply.h"
#include "stormlet/utility/Exceptions.h"

namespace stormlet::solver {

namespace {

template<typename ValueType>
void requireWellFormed(BellmanSystem<ValueType> const& system) {
    auto const& offsets = system.choiceOffsets;
    if (offsets.empty() || offsets.front() != 0 || offsets.back() != system.matrix.rows() || system.offset.size() != system.matrix.rows() ||
        system.matrix.cols() != offsets.size() - 1) {
        throw Error(ErrorCode::DimensionMismatch, "Bellman system dimensions disagree");
    }
    for (std::size_t state = 0; state + 1 < offsets.size(); ++state) {
        if (offsets[state + 1] <= offsets[state]) {
            throw Error(ErrorCode::InvalidArgument, "state " + std::to_string(state) + " of a Bellman system has no choice");
        }
    }
}

SolveOutcome<double> valueIteration(BellmanSystem<double> const& system, SolverEnvironment const& env) {
    index_type const states = system.choiceOffsets.size() - 1;
    std::vector<double> x = system.initialValues.value_or(std::vector<double>(states, 0.0));
    if (x.size() != states) {
        throw Error(ErrorCode::DimensionMismatch, "initial values have the wrong length");
    }
    [[maybe_unused]] bool const fromZero = !system.initialValues.has_value();
    std::vector<double> next;
    ConvergenceTracker tracker(env.precision, env.criterion);
#ifndef NDEBUG
    std::vector<double> checkpoint = x;
#endif
    for (std::uint64_t iteration = 1; iteration <= env.maxIterations; ++iteration) {
        multiplyAndReduce(system.matrix, system.choiceOffsets, x, system.direction, next, &system.offset);
        tracker.observe(x, next);
        bool const done = tracker.converged();
        x.swap(next);
#ifndef NDEBUG
        if (fromZero && iteration % 1000 == 0) {
            for (index_type s = 0; s < states; ++s) {
                assert(x[s] >= checkpoint[s] && "value iteration from zero must be monotone");
            }
            checkpoint = x;
        }
#endif
        if (done) {
            std::vector<index_type> scheduler;
            multiplyAndReduce(system.matrix, system.choiceOffsets, x, system.direction, next, &system.offset, &scheduler);
            return {std::move(x), iteration, true, std::move(scheduler), "value-iteration"};
        }
    }
    throw NotConvergedError("value iteration did not converge within " + std::to_string(env.maxIterations) + " iterations", env.maxIterations, std::move(x));
}

template<typename ValueType>
SolveOutcome<ValueType> policyIteration(BellmanSystem<ValueType> const& system, SolverEnvironment const& env,
                                        std::optional<std::vector<index_type>> const& initialScheduler) {
    index_type const states = system.choiceOffsets.size() - 1;
    std::vector<index_type> scheduler = initialScheduler.value_or(std::vector<index_type>(states, 0));
    if (scheduler.size() != states) {
        throw Error(ErrorCode::DimensionMismatch, "initial scheduler has the wrong length");
    }
    for (index_type s = 0; s < states; ++s) {
        if (scheduler[s] >= system.choiceOffsets[s + 1] - system.choiceOffsets[s]) {
            throw Error(ErrorCode::ChoiceOutOfRange, "initial scheduler picks a missing choice in state " + std::to_string(s));
        }
    }

    std::vector<ValueType> choiceValues;
    for (std::uint64_t round = 1; round <= env.maxIterations; ++round) {
        auto outcome = solveLinear(inducedSystem(system, scheduler), env);
        std::vector<ValueType> x = std::move(outcome.x);

        multiply(system.matrix, x, choiceValues, &system.offset);
        bool changed = false;
        for (index_type s = 0; s < states; ++s) {
            auto const first = system.choiceOffsets[s];
            index_type best = scheduler[s];
            ValueType const& current = choiceValues[first + scheduler[s]];
            ValueType threshold = current;
            if constexpr (!NumberTraits<ValueType>::IsExact) {
                // Inner iterative solves are only accurate to the precision; ignore gains below it.
                double const scale = env.criterion == ConvergenceCriterion::Relative ? std::max(std::fabs(current), kRelativeCutoff) : 1.0;
                double const slack = env.linearMethod == LinearMethod::Exact ? 0.0 : env.precision * scale;
                threshold = system.direction == OptimizationDirection::Maximize ? current + slack : current - slack;
            }
            for (auto c = first; c < system.choiceOffsets[s + 1]; ++c) {
                if (improves(system.direction, choiceValues[c], threshold) &&
                    (best == scheduler[s] || improves(system.direction, choiceValues[c], choiceValues[first + best]))) {
                    best = c - first;
                }
            }
            if (best != scheduler[s]) {
                scheduler[s] = best;
                changed = true;
            }
        }
        if (!changed) {
            return {std::move(x), round, true, std::move(scheduler), "policy-iteration"};
        }
    }
    throw Error(ErrorCode::NotConverged, "policy iteration did not stabilise within " + std::to_string(env.maxIterations) + " rounds");
}

}  // namespace

template<typename ValueType>
LinearSystem<ValueType> inducedSystem(BellmanSystem<ValueType> const& system, std::vector<index_type> const& scheduler) {
    index_type const states = system.choiceOffsets.size() - 1;
    std::vector<index_type> offsets(states + 1, 0);
    std::vector<index_type> columns;
    std::vector<ValueType> values;
    std::vector<ValueType> offset(states);
    for (index_type s = 0; s < states; ++s) {
        auto const row = system.choiceOffsets[s] + scheduler[s];
        auto const r = system.matrix.row(row);
        columns.insert(columns.end(), r.columns.begin(), r.columns.end());
        values.insert(values.end(), r.values.begin(), r.values.end());
        offsets[s + 1] = columns.size();
        offset[s] = system.offset[row];
    }
    return {storage::SparseMatrix<ValueType>(states, states, std::move(offsets), std::move(columns), std::move(values)), std::move(offset)};
}

template LinearSystem<double> inducedSystem(BellmanSystem<double> const&, std::vector<index_type> const&);
template LinearSystem<Rational> inducedSystem(BellmanSystem<Rational> const&, std::vector<index_type> const&);

SolveOutcome<double> solveMinMax(BellmanSystem<double> const& system, SolverEnvironment const& env,
                                 std::optional<std::vector<index_type>> const& initialScheduler) {
    env.validate();
    requireWellFormed(system);
    if (env.minMaxMethod == MinMaxMethod::ValueIteration) {
        return valueIteration(system, env);
    }
    return policyIteration(system, env, initialScheduler);
}

SolveOutcome<Rational> solveMinMax(BellmanSystem<Rational> const& system, SolverEnvironment const& env,
                                   std::optional<std::vector<index_type>> const& initialScheduler) {
    env.validate();
    requireWellFormed(system);
    return policyIteration(system, env, initialScheduler);
}

}  // namespace stormlet::solver
