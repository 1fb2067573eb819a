#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>

#include "stormlet/prism/Expression.h"
#include "stormlet/utility/Exceptions.h"
#include "stormlet/utility/Numbers.h"

namespace stormlet::prism {

/// Result of evaluating an expression; `number` holds doubles (or exact rationals in exact mode).
template<typename ValueType>
struct Value {
    ExpressionType type = ExpressionType::Bool;
    bool boolean = false;
    std::int64_t integer = 0;
    ValueType number{};

    ValueType asNumber() const {
        return type == ExpressionType::Int ? ValueType(static_cast<double>(integer)) : number;
    }
};

template<>
inline Rational Value<Rational>::asNumber() const {
    return type == ExpressionType::Int ? Rational(mpz_class(std::to_string(integer))) : number;
}

namespace detail {

[[noreturn]] inline void integerOverflow(Expression const& expression) {
    throw SourceError(ErrorCode::InvalidArgument, "integer overflow in '" + toString(expression) + "'", expression.line, expression.column);
}

[[noreturn]] inline void divisionByZero(Expression const& expression) {
    throw SourceError(ErrorCode::DivisionByZero, "division by zero in '" + toString(expression) + "'", expression.line, expression.column);
}

inline std::int64_t roundToInteger(double value, bool up, Expression const& expression) {
    double const rounded = up ? std::ceil(value) : std::floor(value);
    if (!(rounded >= -9.2e18 && rounded <= 9.2e18)) {
        integerOverflow(expression);
    }
    return static_cast<std::int64_t>(rounded);
}

inline std::int64_t roundToInteger(Rational const& value, bool up, Expression const& expression) {
    mpz_class result;
    if (up) {
        mpz_cdiv_q(result.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
    } else {
        mpz_fdiv_q(result.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
    }
    if (!result.fits_slong_p()) {
        integerOverflow(expression);
    }
    return result.get_si();
}

inline double power(double base, double exponent, Expression const&) {
    return std::pow(base, exponent);
}

inline Rational power(Rational const& base, Rational const& exponent, Expression const& expression) {
    if (exponent.get_den() != 1 || !exponent.get_num().fits_slong_p()) {
        throw SourceError(ErrorCode::Unsupported, "exact evaluation of '" + toString(expression) + "' needs an integer exponent", expression.line,
                          expression.column);
    }
    long e = exponent.get_num().get_si();
    if (sgn(base) == 0 && e < 0) {
        divisionByZero(expression);
    }
    mpz_class numerator;
    mpz_class denominator;
    unsigned long const magnitude = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_pow_ui(numerator.get_mpz_t(), base.get_num_mpz_t(), magnitude);
    mpz_pow_ui(denominator.get_mpz_t(), base.get_den_mpz_t(), magnitude);
    Rational result = e < 0 ? Rational(denominator, numerator) : Rational(numerator, denominator);
    result.canonicalize();
    return result;
}

template<typename ValueType>
ValueType literal(Expression const& expression) {
    if constexpr (NumberTraits<ValueType>::IsExact) {
        return *expression.exactValue;
    } else {
        return expression.doubleValue;
    }
}

}  // namespace detail

/// Evaluates a type-checked expression under a valuation (indexed by variable slot; booleans as 0/1).
/// Integer arithmetic is exact and overflow-checked; `/` always yields a number. Throws
/// DivisionByZero for a zero divisor or modulus.
template<typename ValueType>
Value<ValueType> evaluate(Expression const& expression, std::span<std::int64_t const> valuation) {
    using Kind = Expression::Kind;
    Value<ValueType> result;
    result.type = expression.type;
    switch (expression.kind) {
        case Kind::BoolLiteral:
            result.boolean = expression.boolValue;
            return result;
        case Kind::IntLiteral:
            result.integer = expression.intValue;
            return result;
        case Kind::DoubleLiteral:
            result.number = detail::literal<ValueType>(expression);
            return result;
        case Kind::Variable:
            if (expression.type == ExpressionType::Bool) {
                result.boolean = valuation[expression.slot] != 0;
            } else {
                result.integer = valuation[expression.slot];
            }
            return result;
        case Kind::Identifier:
            throw SourceError(ErrorCode::UndefinedConstant, "unresolved identifier '" + expression.text + "'", expression.line, expression.column);
        case Kind::Operation:
            break;
    }

    auto const& operands = expression.operands;
    auto operand = [&](std::size_t i) { return evaluate<ValueType>(operands[i], valuation); };
    bool const integral = expression.type == ExpressionType::Int;
    switch (expression.op) {
        case Operator::Or:
            result.boolean = operand(0).boolean || operand(1).boolean;
            return result;
        case Operator::And:
            result.boolean = operand(0).boolean && operand(1).boolean;
            return result;
        case Operator::Not:
            result.boolean = !operand(0).boolean;
            return result;
        case Operator::Equal:
        case Operator::NotEqual: {
            auto const left = operand(0);
            auto const right = operand(1);
            bool equal;
            if (left.type == ExpressionType::Bool) {
                equal = left.boolean == right.boolean;
            } else if (left.type == ExpressionType::Int && right.type == ExpressionType::Int) {
                equal = left.integer == right.integer;
            } else {
                equal = left.asNumber() == right.asNumber();
            }
            result.boolean = expression.op == Operator::Equal ? equal : !equal;
            return result;
        }
        case Operator::Less:
        case Operator::LessEqual:
        case Operator::Greater:
        case Operator::GreaterEqual: {
            auto const left = operand(0);
            auto const right = operand(1);
            int comparison;
            if (left.type == ExpressionType::Int && right.type == ExpressionType::Int) {
                comparison = left.integer < right.integer ? -1 : (left.integer > right.integer ? 1 : 0);
            } else {
                ValueType const l = left.asNumber();
                ValueType const r = right.asNumber();
                comparison = l < r ? -1 : (l > r ? 1 : 0);
            }
            switch (expression.op) {
                case Operator::Less: result.boolean = comparison < 0; break;
                case Operator::LessEqual: result.boolean = comparison <= 0; break;
                case Operator::Greater: result.boolean = comparison > 0; break;
                default: result.boolean = comparison >= 0; break;
            }
            return result;
        }
        case Operator::Plus:
        case Operator::Minus:
        case Operator::Times: {
            auto const left = operand(0);
            auto const right = operand(1);
            if (integral) {
                bool overflow;
                if (expression.op == Operator::Plus) {
                    overflow = __builtin_add_overflow(left.integer, right.integer, &result.integer);
                } else if (expression.op == Operator::Minus) {
                    overflow = __builtin_sub_overflow(left.integer, right.integer, &result.integer);
                } else {
                    overflow = __builtin_mul_overflow(left.integer, right.integer, &result.integer);
                }
                if (overflow) {
                    detail::integerOverflow(expression);
                }
            } else if (expression.op == Operator::Plus) {
                result.number = left.asNumber() + right.asNumber();
            } else if (expression.op == Operator::Minus) {
                result.number = left.asNumber() - right.asNumber();
            } else {
                result.number = left.asNumber() * right.asNumber();
            }
            return result;
        }
        case Operator::Divide: {
            ValueType const divisor = operand(1).asNumber();
            if (utility::isZero(divisor)) {
                detail::divisionByZero(expression);
            }
            result.number = operand(0).asNumber() / divisor;
            return result;
        }
        case Operator::Negate: {
            auto const value = operand(0);
            if (integral) {
                if (value.integer == std::numeric_limits<std::int64_t>::min()) {
                    detail::integerOverflow(expression);
                }
                result.integer = -value.integer;
            } else {
                result.number = -value.number;
            }
            return result;
        }
        case Operator::Min:
        case Operator::Max: {
            bool const wantMax = expression.op == Operator::Max;
            auto best = operand(0);
            for (std::size_t i = 1; i < operands.size(); ++i) {
                auto const candidate = operand(i);
                if (integral) {
                    if (wantMax ? candidate.integer > best.integer : candidate.integer < best.integer) {
                        best = candidate;
                    }
                } else {
                    ValueType const c = candidate.asNumber();
                    ValueType const b = best.asNumber();
                    if (wantMax ? c > b : c < b) {
                        best = candidate;
                    }
                }
            }
            if (integral) {
                result.integer = best.integer;
            } else {
                result.number = best.asNumber();
            }
            return result;
        }
        case Operator::Floor:
        case Operator::Ceil: {
            auto const value = operand(0);
            result.integer = value.type == ExpressionType::Int ? value.integer : detail::roundToInteger(value.number, expression.op == Operator::Ceil, expression);
            return result;
        }
        case Operator::Pow: {
            auto const base = operand(0);
            auto const exponent = operand(1);
            if (integral) {
                if (exponent.integer < 0) {
                    throw SourceError(ErrorCode::InvalidArgument, "negative integer exponent in '" + toString(expression) + "'", expression.line,
                                      expression.column);
                }
                std::int64_t value = 1;
                for (std::int64_t k = 0; k < exponent.integer; ++k) {
                    if (__builtin_mul_overflow(value, base.integer, &value)) {
                        detail::integerOverflow(expression);
                    }
                    if (value == 0 || value == 1) {
                        break;
                    }
                }
                result.integer = value;
            } else {
                result.number = detail::power(base.asNumber(), exponent.asNumber(), expression);
            }
            return result;
        }
        case Operator::Mod: {
            auto const left = operand(0);
            auto const right = operand(1);
            if (right.integer == 0) {
                detail::divisionByZero(expression);
            }
            if (right.integer == -1) {
                result.integer = 0;
                return result;
            }
            std::int64_t remainder = left.integer % right.integer;
            if (remainder != 0 && ((remainder < 0) != (right.integer < 0))) {
                remainder += right.integer;
            }
            result.integer = remainder;
            return result;
        }
        case Operator::ToDouble:
            result.number = operand(0).asNumber();
            return result;
    }
    return result;
}

template<typename ValueType>
bool evaluateBool(Expression const& expression, std::span<std::int64_t const> valuation) {
    return evaluate<ValueType>(expression, valuation).boolean;
}

template<typename ValueType>
ValueType evaluateNumber(Expression const& expression, std::span<std::int64_t const> valuation) {
    return evaluate<ValueType>(expression, valuation).asNumber();
}

}  // namespace stormlet::prism
