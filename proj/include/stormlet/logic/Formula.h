#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stormlet/prism/Expression.h"
#include "stormlet/solver/SolverEnvironment.h"
#include "stormlet/utility/BitVector.h"
#include "stormlet/utility/Numbers.h"

namespace stormlet::logic {

using solver::OptimizationDirection;

enum class ComparisonType { Less, LessEqual, Greater, GreaterEqual };

/// A numeric constant kept exactly, with its source spelling for printing.
struct Number {
    std::string text;
    Rational value;

    static Number parse(std::string const& text);
    double toDouble() const {
        return value.get_d();
    }
    bool operator==(Number const& other) const {
        return value == other.value;
    }
};

struct Bound {
    ComparisonType comparison = ComparisonType::GreaterEqual;
    Number threshold;

    bool operator==(Bound const& other) const = default;

    template<typename ValueType>
    bool holds(ValueType const& value) const;
};

struct StateFormula;
using StateFormulaPtr = std::shared_ptr<StateFormula const>;

/// `X φ`, `φ U ψ` (`F ψ` is `true U ψ`) or `G φ`, optionally bounded by `<= bound` (steps in
/// discrete time, time units in continuous time).
struct PathFormula {
    enum class Kind { Next, Until, Globally };

    Kind kind = Kind::Until;
    /// Left operand of Until; null otherwise.
    StateFormulaPtr left;
    StateFormulaPtr right;
    std::optional<Number> bound;

    bool operator==(PathFormula const& other) const;
};

struct ProbabilityOperator {
    std::optional<OptimizationDirection> optimum;
    /// Absent for `=?` queries.
    std::optional<Bound> bound;
    PathFormula path;
    /// Set for conditional probabilities `P=? [ path || condition ]`.
    std::optional<PathFormula> condition;

    bool operator==(ProbabilityOperator const& other) const = default;
};

struct RewardOperator {
    enum class Target { Reachability, Cumulative };

    /// Empty selects the only reward model.
    std::string rewardModel;
    std::optional<OptimizationDirection> optimum;
    std::optional<Bound> bound;
    Target target = Target::Reachability;
    /// Goal states of `F φ`.
    StateFormulaPtr goal;
    /// Bound of `C<=k`.
    std::optional<Number> cumulativeBound;

    bool operator==(RewardOperator const& other) const;
};

/// State formulas. After resolution against a model, atoms become `States` nodes and purely
/// boolean subtrees are folded into a single `States` node.
struct StateFormula {
    enum class Kind { Boolean, Label, Predicate, Not, And, Or, Probability, Reward, States };

    Kind kind = Kind::Boolean;
    bool value = false;
    std::string label;
    prism::Expression predicate;
    std::vector<StateFormulaPtr> operands;
    std::shared_ptr<ProbabilityOperator const> probability;
    std::shared_ptr<RewardOperator const> reward;
    BitVector states;

    static StateFormulaPtr boolean(bool value);
    static StateFormulaPtr labelAtom(std::string name);
    static StateFormulaPtr predicateAtom(prism::Expression expression);
    static StateFormulaPtr negation(StateFormulaPtr operand);
    static StateFormulaPtr conjunction(StateFormulaPtr left, StateFormulaPtr right);
    static StateFormulaPtr disjunction(StateFormulaPtr left, StateFormulaPtr right);
    static StateFormulaPtr probabilityOperator(ProbabilityOperator op);
    static StateFormulaPtr rewardOperator(RewardOperator op);
    static StateFormulaPtr stateSet(BitVector states);

    bool isOperator() const noexcept {
        return kind == Kind::Probability || kind == Kind::Reward;
    }
    /// The bound of a top-level P or R operator, if any.
    std::optional<Bound> const& operatorBound() const;
    std::optional<OptimizationDirection> const& operatorOptimum() const;
};

/// Structural equality (predicates compared as expression trees).
bool equal(StateFormula const& a, StateFormula const& b);
bool equal(StateFormulaPtr const& a, StateFormulaPtr const& b);

std::string toString(StateFormula const& formula);
std::string toString(PathFormula const& path);
std::string toString(ComparisonType comparison);

}  // namespace stormlet::logic

namespace stormlet::logic {

template<typename ValueType>
bool Bound::holds(ValueType const& value) const {
    auto compare = [&](auto const& v, auto const& t) {
        switch (comparison) {
            case ComparisonType::Less: return v < t;
            case ComparisonType::LessEqual: return v <= t;
            case ComparisonType::Greater: return v > t;
            case ComparisonType::GreaterEqual: return v >= t;
        }
        return false;
    };
    if constexpr (NumberTraits<ValueType>::IsExact) {
        return compare(value, threshold.value);
    } else {
        return compare(value, threshold.toDouble());
    }
}

}  // namespace stormlet::logic
