#pragma once

#include <optional>

#include "stormlet/logic/Formula.h"
#include "stormlet/modelchecker/CheckResult.h"
#include "stormlet/models/Model.h"
#include "stormlet/solver/SolverEnvironment.h"

namespace stormlet::modelchecker {

using solver::OptimizationDirection;
using solver::SolverEnvironment;

/// Checks a resolved state formula. P and R operators yield values (and truth values when
/// bounded); boolean combinations yield truth values only. Nested operators are thresholded
/// bottom-up. Throws UnsupportedCombination for nested `=?` operators, step-bounded operators
/// with a non-integral bound, time bounds on discrete-time models, and conditional
/// probabilities outside DTMCs.
template<typename ValueType>
CheckResult<ValueType> check(models::Model<ValueType> const& model, logic::StateFormulaPtr const& formula, SolverEnvironment const& env = {});

/// Satisfaction set of a resolved state formula.
template<typename ValueType>
BitVector checkStates(models::Model<ValueType> const& model, logic::StateFormulaPtr const& formula, SolverEnvironment const& env = {});

/// One step into `target`; MDPs reduce over choices with `optimum`.
template<typename ValueType>
CheckResult<ValueType> checkNext(models::Model<ValueType> const& model, BitVector const& target, std::optional<OptimizationDirection> optimum = std::nullopt,
                                 SolverEnvironment const& env = {});

/// left U<=k right, for DTMCs and MDPs: k synchronous backward steps.
template<typename ValueType>
CheckResult<ValueType> checkBoundedUntil(models::Model<ValueType> const& model, BitVector const& left, BitVector const& right, std::uint64_t steps,
                                         std::optional<OptimizationDirection> optimum = std::nullopt, SolverEnvironment const& env = {});

/// left U right on a DTMC (or the embedded chain of a CTMC).
template<typename ValueType>
CheckResult<ValueType> checkUntil(models::Model<ValueType> const& model, BitVector const& left, BitVector const& right, SolverEnvironment const& env = {});

template<typename ValueType>
CheckResult<ValueType> checkUntilMdp(models::Model<ValueType> const& model, BitVector const& left, BitVector const& right, OptimizationDirection direction,
                                     SolverEnvironment const& env = {});

/// Expected reward until reaching `target` on a DTMC or CTMC; +inf where the target is
/// missed with positive probability. CTMC state rewards are rates, earned for the mean
/// sojourn time 1/E(s).
template<typename ValueType>
CheckResult<ValueType> checkReachReward(models::Model<ValueType> const& model, models::RewardModel<ValueType> const& rewards, BitVector const& target,
                                        SolverEnvironment const& env = {});

template<typename ValueType>
CheckResult<ValueType> checkReachRewardMdp(models::Model<ValueType> const& model, models::RewardModel<ValueType> const& rewards, BitVector const& target,
                                           OptimizationDirection direction, SolverEnvironment const& env = {});

/// Reward collected in the first k steps. Throws ContinuousTimeUnsupported for CTMCs.
template<typename ValueType>
CheckResult<ValueType> checkCumulativeReward(models::Model<ValueType> const& model, models::RewardModel<ValueType> const& rewards, std::uint64_t steps,
                                             std::optional<OptimizationDirection> optimum = std::nullopt, SolverEnvironment const& env = {});

/// left U[0,t] right on a CTMC by uniformisation. Exact mode throws UnsupportedCombination.
template<typename ValueType>
CheckResult<ValueType> checkTimeBoundedUntilCtmc(models::Model<ValueType> const& model, BitVector const& left, BitVector const& right, double time,
                                                 SolverEnvironment const& env = {});

template<typename ValueType>
CheckResult<ValueType> checkUntilCtmcUnbounded(models::Model<ValueType> const& model, BitVector const& left, BitVector const& right,
                                               SolverEnvironment const& env = {});

/// P(objectiveLeft U objectiveRight | conditionLeft U conditionRight) on a DTMC via a product
/// with a monitor recording whether each until is still pending, satisfied or violated.
template<typename ValueType>
CheckResult<ValueType> checkConditional(models::Model<ValueType> const& model, BitVector const& objectiveLeft, BitVector const& objectiveRight,
                                        BitVector const& conditionLeft, BitVector const& conditionRight, SolverEnvironment const& env = {});

/// Number of states of the conditional product built by checkConditional.
template<typename ValueType>
index_type conditionalProductSize(models::Model<ValueType> const& model, BitVector const& objectiveLeft, BitVector const& objectiveRight,
                                  BitVector const& conditionLeft, BitVector const& conditionRight);

}  // namespace stormlet::modelchecker
