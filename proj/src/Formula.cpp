#include "stormlet/logic/Formula.h"

namespace stormlet::logic {

Number Number::parse(std::string const& text) {
    return Number{text, utility::parseRational(text)};
}

namespace {

StateFormulaPtr make(StateFormula formula) {
    return std::make_shared<StateFormula const>(std::move(formula));
}

bool equalOptional(std::optional<PathFormula> const& a, std::optional<PathFormula> const& b) {
    return a.has_value() == b.has_value() && (!a || *a == *b);
}

std::string optimumSuffix(std::optional<OptimizationDirection> const& optimum) {
    if (!optimum) {
        return "";
    }
    return *optimum == OptimizationDirection::Minimize ? "min" : "max";
}

std::string boundText(std::optional<Bound> const& bound) {
    if (!bound) {
        return "=?";
    }
    return toString(bound->comparison) + bound->threshold.text;
}

std::string operand(StateFormula const& formula) {
    switch (formula.kind) {
        case StateFormula::Kind::And:
        case StateFormula::Kind::Or:
        case StateFormula::Kind::Probability:
        case StateFormula::Kind::Reward:
            return "(" + toString(formula) + ")";
        default:
            return toString(formula);
    }
}

}  // namespace

StateFormulaPtr StateFormula::boolean(bool value) {
    StateFormula formula;
    formula.kind = Kind::Boolean;
    formula.value = value;
    return make(std::move(formula));
}

StateFormulaPtr StateFormula::labelAtom(std::string name) {
    StateFormula formula;
    formula.kind = Kind::Label;
    formula.label = std::move(name);
    return make(std::move(formula));
}

StateFormulaPtr StateFormula::predicateAtom(prism::Expression expression) {
    StateFormula formula;
    formula.kind = Kind::Predicate;
    formula.predicate = std::move(expression);
    return make(std::move(formula));
}

StateFormulaPtr StateFormula::negation(StateFormulaPtr operand) {
    StateFormula formula;
    formula.kind = Kind::Not;
    formula.operands.push_back(std::move(operand));
    return make(std::move(formula));
}

StateFormulaPtr StateFormula::conjunction(StateFormulaPtr left, StateFormulaPtr right) {
    StateFormula formula;
    formula.kind = Kind::And;
    formula.operands = {std::move(left), std::move(right)};
    return make(std::move(formula));
}

StateFormulaPtr StateFormula::disjunction(StateFormulaPtr left, StateFormulaPtr right) {
    StateFormula formula;
    formula.kind = Kind::Or;
    formula.operands = {std::move(left), std::move(right)};
    return make(std::move(formula));
}

StateFormulaPtr StateFormula::probabilityOperator(ProbabilityOperator op) {
    StateFormula formula;
    formula.kind = Kind::Probability;
    formula.probability = std::make_shared<ProbabilityOperator const>(std::move(op));
    return make(std::move(formula));
}

StateFormulaPtr StateFormula::rewardOperator(RewardOperator op) {
    StateFormula formula;
    formula.kind = Kind::Reward;
    formula.reward = std::make_shared<RewardOperator const>(std::move(op));
    return make(std::move(formula));
}

StateFormulaPtr StateFormula::stateSet(BitVector states) {
    StateFormula formula;
    formula.kind = Kind::States;
    formula.states = std::move(states);
    return make(std::move(formula));
}

std::optional<Bound> const& StateFormula::operatorBound() const {
    static std::optional<Bound> const none;
    if (kind == Kind::Probability) {
        return probability->bound;
    }
    if (kind == Kind::Reward) {
        return reward->bound;
    }
    return none;
}

std::optional<OptimizationDirection> const& StateFormula::operatorOptimum() const {
    static std::optional<OptimizationDirection> const none;
    if (kind == Kind::Probability) {
        return probability->optimum;
    }
    if (kind == Kind::Reward) {
        return reward->optimum;
    }
    return none;
}

bool PathFormula::operator==(PathFormula const& other) const {
    return kind == other.kind && (left == nullptr) == (other.left == nullptr) && (!left || equal(left, other.left)) && equal(right, other.right) &&
           bound == other.bound;
}

bool RewardOperator::operator==(RewardOperator const& other) const {
    return rewardModel == other.rewardModel && optimum == other.optimum && bound == other.bound && target == other.target &&
           (goal == nullptr) == (other.goal == nullptr) && (!goal || equal(goal, other.goal)) && cumulativeBound == other.cumulativeBound;
}

bool equal(StateFormulaPtr const& a, StateFormulaPtr const& b) {
    return equal(*a, *b);
}

bool equal(StateFormula const& a, StateFormula const& b) {
    if (a.kind != b.kind) {
        return false;
    }
    switch (a.kind) {
        case StateFormula::Kind::Boolean:
            return a.value == b.value;
        case StateFormula::Kind::Label:
            return a.label == b.label;
        case StateFormula::Kind::Predicate:
            return a.predicate == b.predicate;
        case StateFormula::Kind::Not:
        case StateFormula::Kind::And:
        case StateFormula::Kind::Or:
            if (a.operands.size() != b.operands.size()) {
                return false;
            }
            for (std::size_t i = 0; i < a.operands.size(); ++i) {
                if (!equal(a.operands[i], b.operands[i])) {
                    return false;
                }
            }
            return true;
        case StateFormula::Kind::Probability:
            return a.probability->optimum == b.probability->optimum && a.probability->bound == b.probability->bound &&
                   a.probability->path == b.probability->path && equalOptional(a.probability->condition, b.probability->condition);
        case StateFormula::Kind::Reward:
            return *a.reward == *b.reward;
        case StateFormula::Kind::States:
            return a.states == b.states;
    }
    return false;
}

std::string toString(ComparisonType comparison) {
    switch (comparison) {
        case ComparisonType::Less: return "<";
        case ComparisonType::LessEqual: return "<=";
        case ComparisonType::Greater: return ">";
        case ComparisonType::GreaterEqual: return ">=";
    }
    return "?";
}

std::string toString(PathFormula const& path) {
    std::string const bound = path.bound ? "<=" + path.bound->text : "";
    switch (path.kind) {
        case PathFormula::Kind::Next:
            return "X " + operand(*path.right);
        case PathFormula::Kind::Globally:
            return "G" + bound + " " + operand(*path.right);
        case PathFormula::Kind::Until:
            if (path.left->kind == StateFormula::Kind::Boolean && path.left->value) {
                return "F" + bound + " " + operand(*path.right);
            }
            return operand(*path.left) + " U" + bound + " " + operand(*path.right);
    }
    return "?";
}

std::string toString(StateFormula const& formula) {
    switch (formula.kind) {
        case StateFormula::Kind::Boolean:
            return formula.value ? "true" : "false";
        case StateFormula::Kind::Label:
            return "\"" + formula.label + "\"";
        case StateFormula::Kind::Predicate: {
            std::string const text = prism::toString(formula.predicate);
            bool const wrapped = formula.predicate.kind == prism::Expression::Kind::Operation && text.front() == '(' && formula.predicate.operands.size() == 2 &&
                                 formula.predicate.op != prism::Operator::Min && formula.predicate.op != prism::Operator::Max &&
                                 formula.predicate.op != prism::Operator::Pow && formula.predicate.op != prism::Operator::Mod;
            return wrapped ? text : "(" + text + ")";
        }
        case StateFormula::Kind::Not:
            return "!" + operand(*formula.operands[0]);
        case StateFormula::Kind::And:
            return operand(*formula.operands[0]) + " & " + operand(*formula.operands[1]);
        case StateFormula::Kind::Or:
            return operand(*formula.operands[0]) + " | " + operand(*formula.operands[1]);
        case StateFormula::Kind::Probability: {
            auto const& op = *formula.probability;
            std::string result = "P" + optimumSuffix(op.optimum) + boundText(op.bound) + " [ " + toString(op.path);
            if (op.condition) {
                result += " || " + toString(*op.condition);
            }
            return result + " ]";
        }
        case StateFormula::Kind::Reward: {
            auto const& op = *formula.reward;
            std::string result = "R" + optimumSuffix(op.optimum);
            if (!op.rewardModel.empty()) {
                result += "{\"" + op.rewardModel + "\"}";
            }
            result += boundText(op.bound) + " [ ";
            if (op.target == RewardOperator::Target::Cumulative) {
                result += "C<=" + op.cumulativeBound->text;
            } else {
                result += "F " + operand(*op.goal);
            }
            return result + " ]";
        }
        case StateFormula::Kind::States:
            return "{" + std::to_string(formula.states.count()) + " states}";
    }
    return "?";
}

}  // namespace stormlet::logic
