#pragma once

#include <optional>
#include <vector>

#include "stormlet/solver/LinearEquationSolver.h"
#include "stormlet/solver/SolverEnvironment.h"
#include "stormlet/storage/SparseMatrix.h"

namespace stormlet::solver {

/// x_s = opt_{c in choices(s)} (b_c + A_c x). Matrix rows are choices, columns are states.
template<typename ValueType>
struct BellmanSystem {
    storage::SparseMatrix<ValueType> matrix;
    std::vector<index_type> choiceOffsets;
    std::vector<ValueType> offset;
    OptimizationDirection direction = OptimizationDirection::Maximize;
    /// Start vector for value iteration (default zero). A value of a proper policy makes the
    /// iteration descend to the optimum when zero-reward end components are present.
    std::optional<std::vector<ValueType>> initialValues;
};

/// Solves a Bellman system whose optimum is the least fixed point above zero.
///
/// Value iteration starts at x = 0 and stops on the environment's criterion; the scheduler is
/// the argopt of the final iterate (lowest choice index on ties). Policy iteration starts from
/// `initialScheduler` (default: choice 0 everywhere), alternates a linear solve with
/// env.linearMethod and greedy improvement, and switches a state's choice only on strict
/// improvement; it returns the final stable policy. Rational systems always use policy iteration
/// with exact inner solves.
///
/// Scheduler entries are offsets into each state's choices.
SolveOutcome<double> solveMinMax(BellmanSystem<double> const& system, SolverEnvironment const& env,
                                 std::optional<std::vector<index_type>> const& initialScheduler = std::nullopt);

SolveOutcome<Rational> solveMinMax(BellmanSystem<Rational> const& system, SolverEnvironment const& env,
                                   std::optional<std::vector<index_type>> const& initialScheduler = std::nullopt);

/// Rows of the Bellman system selected by `scheduler`, as a square linear system.
template<typename ValueType>
LinearSystem<ValueType> inducedSystem(BellmanSystem<ValueType> const& system, std::vector<index_type> const& scheduler);

}  // namespace stormlet::solver
