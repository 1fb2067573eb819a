#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "stormlet/utility/Numbers.h"

namespace stormlet::prism {

enum class ExpressionType { Bool, Int, Double };

enum class Operator {
    Or,
    And,
    Not,
    Equal,
    NotEqual,
    Less,
    LessEqual,
    Greater,
    GreaterEqual,
    Plus,
    Minus,
    Times,
    Divide,
    Negate,
    Min,
    Max,
    Floor,
    Ceil,
    Pow,
    Mod,
    /// Inserted by type checking where an int expression stands for a double constant.
    ToDouble
};

struct Expression {
    enum class Kind { BoolLiteral, IntLiteral, DoubleLiteral, Identifier, Variable, Operation };

    Kind kind = Kind::BoolLiteral;
    Operator op = Operator::Or;
    bool boolValue = false;
    std::int64_t intValue = 0;
    double doubleValue = 0.0;
    /// Exact value of a double literal, parsed from its decimal text.
    std::shared_ptr<Rational const> exactValue;
    /// Identifier name, or the literal text of a double literal.
    std::string text;
    /// Variable slot in a state valuation (Kind::Variable).
    std::uint32_t slot = 0;
    std::vector<Expression> operands;
    /// Result type, assigned by type checking.
    ExpressionType type = ExpressionType::Bool;
    std::size_t line = 0;
    std::size_t column = 0;

    static Expression boolean(bool value);
    static Expression integer(std::int64_t value);
    /// Throws InvalidArgument if text is not a finite decimal number.
    static Expression number(std::string const& text);
    static Expression identifier(std::string name);
    static Expression operation(Operator op, std::vector<Expression> operands);

    bool operator==(Expression const& other) const;
};

/// Fully parenthesised source form that reparses to the same tree.
std::string toString(Expression const& expression);
std::string toString(ExpressionType type);
std::string_view spelling(Operator op);

bool isNumeric(ExpressionType type);

/// True if no variable occurs in the expression.
bool isConstant(Expression const& expression);

}  // namespace stormlet::prism
