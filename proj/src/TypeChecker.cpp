#include "stormlet/prism/TypeChecker.h"

#include <algorithm>
#include <charconv>
#include <functional>
#include <set>

#include "stormlet/prism/Evaluator.h"
#include "stormlet/utility/Exceptions.h"

namespace stormlet::prism {

ConstantBindings parseConstantBindings(std::string_view text) {
    ConstantBindings bindings;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(',', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view item = text.substr(start, end - start);
        while (!item.empty() && item.front() == ' ') {
            item.remove_prefix(1);
        }
        while (!item.empty() && item.back() == ' ') {
            item.remove_suffix(1);
        }
        if (!item.empty()) {
            auto const eq = item.find('=');
            if (eq == std::string_view::npos || eq == 0 || eq + 1 == item.size()) {
                throw Error(ErrorCode::UsageError, "malformed constant binding '" + std::string(item) + "', expected name=value");
            }
            std::string const name(item.substr(0, eq));
            if (!bindings.emplace(name, std::string(item.substr(eq + 1))).second) {
                throw Error(ErrorCode::UsageError, "constant '" + name + "' is bound twice");
            }
        }
        start = end + 1;
    }
    return bindings;
}

namespace {

[[noreturn]] void mismatch(Expression const& at, std::string const& message) {
    throw SourceError(ErrorCode::TypeMismatch, message, at.line, at.column);
}

std::string describeOperator(Operator op) {
    return "'" + std::string(spelling(op)) + "'";
}

/// Resolves identifiers and assigns types. Constants and formulas are expanded on first use,
/// with cycle detection.
class Checker {
   public:
    Checker(Program const& program, ConstantBindings const& bindings) : program(program), bindings(bindings) {}

    void declare(std::string const& name, std::size_t line) {
        if (!names.insert(name).second) {
            throw SourceError(ErrorCode::DuplicateName, "name '" + name + "' is declared more than once", line);
        }
    }

    void addVariable(std::string const& name, ExpressionType type, std::uint32_t slot) {
        variables.emplace(name, std::make_pair(slot, type));
    }

    Expression const& constant(std::size_t index) {
        auto const& declaration = program.constants[index];
        return definition(declaration.name);
    }

    Expression check(Expression const& expression) {
        using Kind = Expression::Kind;
        switch (expression.kind) {
            case Kind::BoolLiteral:
            case Kind::IntLiteral:
            case Kind::DoubleLiteral:
            case Kind::Variable:
                return expression;
            case Kind::Identifier: {
                if (auto const variable = variables.find(expression.text); variable != variables.end()) {
                    Expression result = expression;
                    result.kind = Kind::Variable;
                    result.slot = variable->second.first;
                    result.type = variable->second.second;
                    return result;
                }
                Expression result = definition(expression.text, &expression);
                return result;
            }
            case Kind::Operation:
                break;
        }
        Expression result = expression;
        for (auto& operand : result.operands) {
            operand = check(operand);
        }
        result.type = operationType(result);
        return result;
    }

    Expression checkAs(Expression const& expression, ExpressionType expected, std::string const& what) {
        Expression result = check(expression);
        if (expected == ExpressionType::Bool ? result.type != ExpressionType::Bool : !isNumeric(result.type)) {
            mismatch(expression, what + " must be " + (expected == ExpressionType::Bool ? "bool" : "numeric") + ", found " + toString(result.type));
        }
        return result;
    }

    std::map<std::string, Expression> const& definitions() const {
        return resolved;
    }

   private:
    Expression const& definition(std::string const& name, Expression const* use = nullptr) {
        if (auto const found = resolved.find(name); found != resolved.end()) {
            return found->second;
        }
        if (inProgress.count(name) > 0) {
            throw SourceError(ErrorCode::CyclicFormula, "definition of '" + name + "' depends on itself", use ? use->line : 0, use ? use->column : 0);
        }
        auto const constant = std::find_if(program.constants.begin(), program.constants.end(), [&](Constant const& c) { return c.name == name; });
        auto const formula = std::find_if(program.formulas.begin(), program.formulas.end(), [&](Formula const& f) { return f.name == name; });
        if (constant == program.constants.end() && formula == program.formulas.end()) {
            throw SourceError(ErrorCode::UndefinedConstant, "undefined identifier '" + name + "'", use ? use->line : 0, use ? use->column : 0);
        }
        inProgress.insert(name);
        Expression value = constant != program.constants.end() ? constantValue(*constant) : check(formula->definition);
        inProgress.erase(name);
        return resolved.emplace(name, std::move(value)).first->second;
    }

    Expression constantValue(Constant const& constant) {
        Expression value;
        auto const binding = bindings.find(constant.name);
        if (binding != bindings.end()) {
            if (constant.definition) {
                throw SourceError(ErrorCode::InvalidArgument, "constant '" + constant.name + "' is defined in the model and cannot be bound", constant.line);
            }
            value = bindValue(constant, binding->second);
        } else if (constant.definition) {
            value = check(*constant.definition);
            if (!isConstant(value)) {
                throw SourceError(ErrorCode::InvalidArgument, "definition of constant '" + constant.name + "' refers to a variable", constant.line);
            }
        } else {
            throw SourceError(ErrorCode::UndefinedConstant, "constant '" + constant.name + "' has no value", constant.line);
        }
        if (value.type == constant.type) {
            return value;
        }
        if (constant.type == ExpressionType::Double && value.type == ExpressionType::Int) {
            Expression promoted = Expression::operation(Operator::ToDouble, {std::move(value)});
            promoted.type = ExpressionType::Double;
            return promoted;
        }
        throw SourceError(ErrorCode::TypeMismatch, "constant '" + constant.name + "' is declared " + toString(constant.type) + " but its value is " + toString(value.type),
                          constant.line);
    }

    static Expression bindValue(Constant const& constant, std::string const& text) {
        auto const invalid = [&]() -> Expression {
            throw Error(ErrorCode::TypeMismatch, "value '" + text + "' is not a valid " + toString(constant.type) + " for constant '" + constant.name + "'");
        };
        switch (constant.type) {
            case ExpressionType::Bool:
                if (text == "true" || text == "false") {
                    return Expression::boolean(text == "true");
                }
                return invalid();
            case ExpressionType::Int: {
                std::int64_t value = 0;
                auto [end, error] = std::from_chars(text.data(), text.data() + text.size(), value);
                if (error != std::errc() || end != text.data() + text.size()) {
                    return invalid();
                }
                return Expression::integer(value);
            }
            case ExpressionType::Double:
                try {
                    return Expression::number(text);
                } catch (Error const&) {
                    return invalid();
                }
        }
        return invalid();
    }

    static ExpressionType operationType(Expression const& expression) {
        auto const& operands = expression.operands;
        auto requireAll = [&](auto predicate, char const* what) {
            for (auto const& operand : operands) {
                if (!predicate(operand.type)) {
                    mismatch(expression, "operator " + describeOperator(expression.op) + " expects " + what + " operands, found " + toString(operand.type));
                }
            }
        };
        auto const isBool = [](ExpressionType t) { return t == ExpressionType::Bool; };
        auto const isInt = [](ExpressionType t) { return t == ExpressionType::Int; };
        bool const allInt = std::all_of(operands.begin(), operands.end(), [&](Expression const& e) { return isInt(e.type); });
        switch (expression.op) {
            case Operator::Or:
            case Operator::And:
            case Operator::Not:
                requireAll(isBool, "bool");
                return ExpressionType::Bool;
            case Operator::Equal:
            case Operator::NotEqual:
                if (isBool(operands[0].type) != isBool(operands[1].type)) {
                    mismatch(expression, "operator " + describeOperator(expression.op) + " compares " + toString(operands[0].type) + " with " +
                                             toString(operands[1].type));
                }
                return ExpressionType::Bool;
            case Operator::Less:
            case Operator::LessEqual:
            case Operator::Greater:
            case Operator::GreaterEqual:
                requireAll(isNumeric, "numeric");
                return ExpressionType::Bool;
            case Operator::Plus:
            case Operator::Minus:
            case Operator::Times:
            case Operator::Negate:
            case Operator::Min:
            case Operator::Max:
            case Operator::Pow:
                requireAll(isNumeric, "numeric");
                return allInt ? ExpressionType::Int : ExpressionType::Double;
            case Operator::Divide:
            case Operator::ToDouble:
                requireAll(isNumeric, "numeric");
                return ExpressionType::Double;
            case Operator::Floor:
            case Operator::Ceil:
                requireAll(isNumeric, "numeric");
                return ExpressionType::Int;
            case Operator::Mod:
                requireAll(isInt, "int");
                return ExpressionType::Int;
        }
        return ExpressionType::Bool;
    }

    Program const& program;
    ConstantBindings const& bindings;
    std::set<std::string> names;
    std::map<std::string, std::pair<std::uint32_t, ExpressionType>> variables;
    std::map<std::string, Expression> resolved;
    std::set<std::string> inProgress;
};

std::int64_t evaluateConstantInt(Checker& checker, Expression const& expression, std::string const& what) {
    Expression const checked = checker.checkAs(expression, ExpressionType::Int, what);
    if (checked.type != ExpressionType::Int) {
        mismatch(expression, what + " must be int, found " + toString(checked.type));
    }
    if (!isConstant(checked)) {
        throw SourceError(ErrorCode::InvalidArgument, what + " must not refer to variables", expression.line, expression.column);
    }
    return evaluate<double>(checked, {}).integer;
}

}  // namespace

Expression CheckedProgram::resolve(Expression const& expression) const {
    Program empty;
    Checker checker(empty, {});
    for (std::uint32_t slot = 0; slot < variables.size(); ++slot) {
        checker.addVariable(variables[slot].name, variables[slot].type, slot);
    }
    std::map<std::string, Expression> const& known = definitions;
    std::function<Expression(Expression const&)> substitute = [&](Expression const& e) -> Expression {
        if (e.kind == Expression::Kind::Identifier) {
            if (auto const found = known.find(e.text); found != known.end()) {
                return found->second;
            }
            return e;
        }
        Expression result = e;
        for (auto& operand : result.operands) {
            operand = substitute(operand);
        }
        return result;
    };
    return checker.check(substitute(expression));
}

CheckedProgram typecheck(Program const& program, ConstantBindings const& bindings) {
    for (auto const& [name, value] : bindings) {
        bool const declared = std::any_of(program.constants.begin(), program.constants.end(), [&](Constant const& c) { return c.name == name; });
        if (!declared) {
            throw Error(ErrorCode::UndefinedConstant, "bound constant '" + name + "' is not declared in the model");
        }
    }

    Checker checker(program, bindings);
    CheckedProgram result;
    result.modelType = program.modelType;

    for (auto const& constant : program.constants) {
        checker.declare(constant.name, constant.line);
    }
    for (auto const& formula : program.formulas) {
        checker.declare(formula.name, formula.line);
    }
    std::set<std::string> moduleNames;
    std::map<std::string, std::size_t> owner;
    for (std::size_t m = 0; m < program.modules.size(); ++m) {
        auto const& module = program.modules[m];
        if (!moduleNames.insert(module.name).second) {
            throw SourceError(ErrorCode::DuplicateName, "module '" + module.name + "' is declared more than once", module.line);
        }
        for (auto const& variable : module.variables) {
            checker.declare(variable.name, variable.line);
            auto const slot = static_cast<std::uint32_t>(result.variables.size());
            checker.addVariable(variable.name, variable.type, slot);
            owner[variable.name] = m;
            VariableInfo info;
            info.name = variable.name;
            info.type = variable.type;
            info.module = m;
            result.variables.push_back(info);
        }
    }

    for (std::size_t i = 0; i < program.constants.size(); ++i) {
        checker.constant(i);
    }

    std::size_t slot = 0;
    for (auto const& module : program.modules) {
        for (auto const& variable : module.variables) {
            VariableInfo& info = result.variables[slot++];
            if (variable.type == ExpressionType::Int) {
                info.lower = evaluateConstantInt(checker, *variable.lower, "lower bound of '" + variable.name + "'");
                info.upper = evaluateConstantInt(checker, *variable.upper, "upper bound of '" + variable.name + "'");
                if (info.lower > info.upper) {
                    throw SourceError(ErrorCode::InvalidArgument, "variable '" + variable.name + "' has an empty range", variable.line);
                }
                info.initial = info.lower;
                if (variable.initial) {
                    info.initial = evaluateConstantInt(checker, *variable.initial, "initial value of '" + variable.name + "'");
                }
                if (info.initial < info.lower || info.initial > info.upper) {
                    throw SourceError(ErrorCode::OutOfBoundsAssignment,
                                      "initial value " + std::to_string(info.initial) + " of '" + variable.name + "' is outside [" + std::to_string(info.lower) +
                                          ".." + std::to_string(info.upper) + "]",
                                      variable.line);
                }
            } else if (variable.initial) {
                Expression const initial = checker.checkAs(*variable.initial, ExpressionType::Bool, "initial value of '" + variable.name + "'");
                if (!isConstant(initial)) {
                    throw SourceError(ErrorCode::InvalidArgument, "initial value of '" + variable.name + "' must not refer to variables", variable.line);
                }
                info.initial = evaluate<double>(initial, {}).boolean ? 1 : 0;
            }
        }
    }

    for (auto const& formula : program.formulas) {
        checker.check(Expression::identifier(formula.name));
    }

    for (std::size_t m = 0; m < program.modules.size(); ++m) {
        auto const& module = program.modules[m];
        CheckedModule checkedModule;
        checkedModule.name = module.name;
        for (auto const& command : module.commands) {
            CheckedCommand checkedCommand;
            checkedCommand.action = command.action;
            checkedCommand.line = command.line;
            checkedCommand.column = command.column;
            checkedCommand.guard = checker.checkAs(command.guard, ExpressionType::Bool, "guard");
            if (!command.action.empty() && std::find(result.actions.begin(), result.actions.end(), command.action) == result.actions.end()) {
                result.actions.push_back(command.action);
            }
            for (auto const& update : command.updates) {
                CheckedUpdate checkedUpdate;
                checkedUpdate.line = update.line;
                checkedUpdate.weight = update.weight ? checker.checkAs(*update.weight, ExpressionType::Double, "update weight") : Expression::integer(1);
                for (auto const& assignment : update.assignments) {
                    auto const target = owner.find(assignment.variable);
                    if (target == owner.end()) {
                        throw SourceError(ErrorCode::UndefinedConstant, "assignment to undeclared variable '" + assignment.variable + "'", assignment.line);
                    }
                    if (target->second != m) {
                        throw SourceError(ErrorCode::InvalidArgument,
                                          "module '" + module.name + "' assigns variable '" + assignment.variable + "' of module '" +
                                              program.modules[target->second].name + "'",
                                          assignment.line);
                    }
                    auto const variableSlot = static_cast<std::uint32_t>(
                        std::find_if(result.variables.begin(), result.variables.end(), [&](VariableInfo const& v) { return v.name == assignment.variable; }) -
                        result.variables.begin());
                    ExpressionType const expected = result.variables[variableSlot].type;
                    Expression value = checker.check(assignment.expression);
                    if (value.type != expected) {
                        mismatch(assignment.expression,
                                 "cannot assign " + toString(value.type) + " value to " + toString(expected) + " variable '" + assignment.variable + "'");
                    }
                    checkedUpdate.assignments.push_back({variableSlot, std::move(value)});
                }
                checkedCommand.updates.push_back(std::move(checkedUpdate));
            }
            checkedModule.commands.push_back(std::move(checkedCommand));
        }
        result.modules.push_back(std::move(checkedModule));
    }

    std::set<std::string> labelNames{"init", "deadlock"};
    for (auto const& label : program.labels) {
        if (!labelNames.insert(label.name).second) {
            throw SourceError(ErrorCode::DuplicateName, "label '" + label.name + "' is declared more than once or is reserved", label.line);
        }
        result.labels.push_back({label.name, checker.checkAs(label.expression, ExpressionType::Bool, "label '" + label.name + "'")});
    }

    std::set<std::string> rewardNames;
    for (auto const& block : program.rewards) {
        if (!rewardNames.insert(block.name).second) {
            throw SourceError(ErrorCode::DuplicateName, "reward structure '" + block.name + "' is declared more than once", block.line);
        }
        CheckedRewardBlock checkedBlock;
        checkedBlock.name = block.name;
        for (auto const& item : block.items) {
            if (item.action && !item.action->empty() && std::find(result.actions.begin(), result.actions.end(), *item.action) == result.actions.end()) {
                throw SourceError(ErrorCode::InvalidArgument, "reward item refers to unknown action '" + *item.action + "'", item.line);
            }
            checkedBlock.items.push_back(
                {item.action, checker.checkAs(item.guard, ExpressionType::Bool, "reward guard"), checker.checkAs(item.value, ExpressionType::Double, "reward value")});
        }
        result.rewards.push_back(std::move(checkedBlock));
    }

    result.definitions = checker.definitions();
    return result;
}

}  // namespace stormlet::prism
