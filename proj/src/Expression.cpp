#include "stormlet/prism/Expression.h"

#include "stormlet/utility/Exceptions.h"

namespace stormlet::prism {

Expression Expression::boolean(bool value) {
    Expression result;
    result.kind = Kind::BoolLiteral;
    result.boolValue = value;
    result.type = ExpressionType::Bool;
    return result;
}

Expression Expression::integer(std::int64_t value) {
    Expression result;
    result.kind = Kind::IntLiteral;
    result.intValue = value;
    result.type = ExpressionType::Int;
    return result;
}

Expression Expression::number(std::string const& text) {
    Expression result;
    result.kind = Kind::DoubleLiteral;
    result.text = text;
    result.exactValue = std::make_shared<Rational const>(utility::parseRational(text));
    result.doubleValue = utility::parseDouble(text);
    result.type = ExpressionType::Double;
    return result;
}

Expression Expression::identifier(std::string name) {
    Expression result;
    result.kind = Kind::Identifier;
    result.text = std::move(name);
    return result;
}

Expression Expression::operation(Operator op, std::vector<Expression> operands) {
    Expression result;
    result.kind = Kind::Operation;
    result.op = op;
    result.operands = std::move(operands);
    return result;
}

bool Expression::operator==(Expression const& other) const {
    if (kind != other.kind) {
        return false;
    }
    switch (kind) {
        case Kind::BoolLiteral:
            return boolValue == other.boolValue;
        case Kind::IntLiteral:
            return intValue == other.intValue;
        case Kind::DoubleLiteral:
            return *exactValue == *other.exactValue;
        case Kind::Identifier:
            return text == other.text;
        case Kind::Variable:
            return slot == other.slot;
        case Kind::Operation:
            return op == other.op && operands == other.operands;
    }
    return false;
}

std::string_view spelling(Operator op) {
    switch (op) {
        case Operator::Or: return "|";
        case Operator::And: return "&";
        case Operator::Not: return "!";
        case Operator::Equal: return "=";
        case Operator::NotEqual: return "!=";
        case Operator::Less: return "<";
        case Operator::LessEqual: return "<=";
        case Operator::Greater: return ">";
        case Operator::GreaterEqual: return ">=";
        case Operator::Plus: return "+";
        case Operator::Minus: return "-";
        case Operator::Times: return "*";
        case Operator::Divide: return "/";
        case Operator::Negate: return "-";
        case Operator::Min: return "min";
        case Operator::Max: return "max";
        case Operator::Floor: return "floor";
        case Operator::Ceil: return "ceil";
        case Operator::Pow: return "pow";
        case Operator::Mod: return "mod";
        case Operator::ToDouble: return "";
    }
    return "?";
}

std::string toString(Expression const& expression) {
    switch (expression.kind) {
        case Expression::Kind::BoolLiteral:
            return expression.boolValue ? "true" : "false";
        case Expression::Kind::IntLiteral:
            return std::to_string(expression.intValue);
        case Expression::Kind::DoubleLiteral:
            return expression.text;
        case Expression::Kind::Identifier:
        case Expression::Kind::Variable:
            return expression.text;
        case Expression::Kind::Operation:
            break;
    }
    auto const& operands = expression.operands;
    switch (expression.op) {
        case Operator::Not:
            return "!" + toString(operands[0]);
        case Operator::Negate:
            return "-" + toString(operands[0]);
        case Operator::ToDouble:
            return toString(operands[0]);
        case Operator::Min:
        case Operator::Max:
        case Operator::Floor:
        case Operator::Ceil:
        case Operator::Pow:
        case Operator::Mod: {
            std::string result(spelling(expression.op));
            result += '(';
            for (std::size_t i = 0; i < operands.size(); ++i) {
                result += (i == 0 ? "" : ", ") + toString(operands[i]);
            }
            return result + ')';
        }
        default:
            return "(" + toString(operands[0]) + " " + std::string(spelling(expression.op)) + " " + toString(operands[1]) + ")";
    }
}

std::string toString(ExpressionType type) {
    switch (type) {
        case ExpressionType::Bool: return "bool";
        case ExpressionType::Int: return "int";
        case ExpressionType::Double: return "double";
    }
    return "?";
}

bool isNumeric(ExpressionType type) {
    return type != ExpressionType::Bool;
}

bool isConstant(Expression const& expression) {
    if (expression.kind == Expression::Kind::Variable || expression.kind == Expression::Kind::Identifier) {
        return false;
    }
    for (auto const& operand : expression.operands) {
        if (!isConstant(operand)) {
            return false;
        }
    }
    return true;
}

}  // namespace stormlet::prism
