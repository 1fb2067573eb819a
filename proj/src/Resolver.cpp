#include "stormlet/logic/Resolver.h"

#include "stormlet/prism/Evaluator.h"
#include "stormlet/utility/Exceptions.h"

namespace stormlet::logic {

namespace {

class Resolver {
   public:
    explicit Resolver(ResolutionContext const& context) : context(context), stateCount(context.labeling->numberOfStates()) {}

    StateFormulaPtr state(StateFormulaPtr const& formula) const {
        using Kind = StateFormula::Kind;
        switch (formula->kind) {
            case Kind::States:
                return formula;
            case Kind::Boolean:
                return StateFormula::stateSet(BitVector(stateCount, formula->value));
            case Kind::Label:
                if (!context.labeling->containsLabel(formula->label)) {
                    throw Error(ErrorCode::UnknownLabel, "the model has no label \"" + formula->label + "\"");
                }
                return StateFormula::stateSet(context.labeling->getStates(formula->label));
            case Kind::Predicate:
                return StateFormula::stateSet(predicate(formula->predicate));
            case Kind::Not: {
                auto operand = state(formula->operands[0]);
                if (operand->kind == Kind::States) {
                    return StateFormula::stateSet(~operand->states);
                }
                return StateFormula::negation(std::move(operand));
            }
            case Kind::And:
            case Kind::Or: {
                auto left = state(formula->operands[0]);
                auto right = state(formula->operands[1]);
                bool const conjunction = formula->kind == Kind::And;
                if (left->kind == Kind::States && right->kind == Kind::States) {
                    return StateFormula::stateSet(conjunction ? left->states & right->states : left->states | right->states);
                }
                return conjunction ? StateFormula::conjunction(std::move(left), std::move(right)) : StateFormula::disjunction(std::move(left), std::move(right));
            }
            case Kind::Probability: {
                checkOptimum(formula->probability->optimum, "P");
                ProbabilityOperator op = *formula->probability;
                op.path = path(op.path);
                if (op.condition) {
                    op.condition = path(*op.condition);
                }
                return StateFormula::probabilityOperator(std::move(op));
            }
            case Kind::Reward: {
                checkOptimum(formula->reward->optimum, "R");
                RewardOperator op = *formula->reward;
                if (op.goal) {
                    op.goal = state(op.goal);
                }
                return StateFormula::rewardOperator(std::move(op));
            }
        }
        return formula;
    }

   private:
    PathFormula path(PathFormula path) const {
        if (path.left) {
            path.left = state(path.left);
        }
        path.right = state(path.right);
        return path;
    }

    void checkOptimum(std::optional<OptimizationDirection> const& optimum, char const* name) const {
        bool const nondeterministic = models::isNondeterministic(context.kind);
        if (nondeterministic && !optimum) {
            throw Error(ErrorCode::OptimumMissingForMdp, std::string("operator ") + name + " on an MDP needs 'min' or 'max' (" + name + "min / " + name + "max)");
        }
        if (!nondeterministic && optimum) {
            throw Error(ErrorCode::OptimumGivenForDeterministic,
                        std::string("operator ") + name + " on a " + std::string(models::toString(context.kind)) + " must not specify 'min' or 'max'");
        }
    }

    BitVector predicate(prism::Expression const& expression) const {
        if (context.program == nullptr || context.states == nullptr) {
            throw Error(ErrorCode::PredicateWithoutStateMap,
                        "predicate (" + prism::toString(expression) + ") needs variable information, which only PRISM models provide; use a label");
        }
        prism::Expression const typed = context.program->resolve(expression);
        if (typed.type != prism::ExpressionType::Bool) {
            throw SourceError(ErrorCode::TypeMismatch, "predicate must be bool, found " + prism::toString(typed.type), expression.line, expression.column);
        }
        BitVector result(stateCount);
        std::vector<std::int64_t> valuation;
        for (std::uint64_t s = 0; s < stateCount; ++s) {
            context.states->valuation(s, valuation);
            if (prism::evaluateBool<double>(typed, valuation)) {
                result.set(s);
            }
        }
        return result;
    }

    ResolutionContext const& context;
    std::uint64_t stateCount;
};

}  // namespace

StateFormulaPtr resolve(StateFormulaPtr const& formula, ResolutionContext const& context) {
    if (context.labeling == nullptr) {
        throw Error(ErrorCode::InvalidArgument, "resolution needs a state labeling");
    }
    return Resolver(context).state(formula);
}

}  // namespace stormlet::logic
