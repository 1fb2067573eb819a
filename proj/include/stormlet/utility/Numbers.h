#pragma once

#include <gmpxx.h>

#include <cmath>
#include <string>
#include <string_view>

namespace stormlet {

/// Arbitrary-precision rational used by exact mode.
using Rational = mpq_class;

template<typename ValueType>
struct NumberTraits;

template<>
struct NumberTraits<double> {
    static constexpr bool IsExact = false;
    static constexpr char const* Name = "double";
};

template<>
struct NumberTraits<Rational> {
    static constexpr bool IsExact = true;
    static constexpr char const* Name = "rational";
};

template<typename ValueType>
concept ScalarType = requires { NumberTraits<ValueType>::IsExact; };

namespace utility {

template<typename ValueType>
ValueType zero() {
    return ValueType(0);
}

template<typename ValueType>
ValueType one() {
    return ValueType(1);
}

inline bool isZero(double value) {
    return value == 0.0;
}
inline bool isZero(Rational const& value) {
    return sgn(value) == 0;
}

inline double abs(double value) {
    return std::fabs(value);
}
inline Rational abs(Rational const& value) {
    return ::abs(value);
}

inline bool isFinite(double value) {
    return std::isfinite(value);
}
inline bool isFinite(Rational const&) {
    return true;
}

inline double toDouble(double value) {
    return value;
}
inline double toDouble(Rational const& value) {
    return value.get_d();
}

template<typename To, typename From>
To convertNumber(From const& value);

template<>
inline double convertNumber<double, double>(double const& value) {
    return value;
}
template<>
inline double convertNumber<double, Rational>(Rational const& value) {
    return value.get_d();
}
/// Exact: every finite double is a dyadic rational.
template<>
inline Rational convertNumber<Rational, double>(double const& value) {
    return Rational(value);
}
template<>
inline Rational convertNumber<Rational, Rational>(Rational const& value) {
    return value;
}

/// Parses `p/q`, integers and decimals (optionally with exponent) exactly.
Rational parseRational(std::string_view text);

/// Parses the same syntax as parseRational into the nearest double.
double parseDouble(std::string_view text);

template<typename ValueType>
ValueType parseNumber(std::string_view text);

template<>
inline double parseNumber<double>(std::string_view text) {
    return parseDouble(text);
}
template<>
inline Rational parseNumber<Rational>(std::string_view text) {
    return parseRational(text);
}

/// Shortest representation that parses back to the identical double.
std::string toRoundTripString(double value);
/// Canonical `p/q`, or `p` when the denominator is 1.
std::string toRoundTripString(Rational const& value);

/// Six significant digits, `inf`/`-inf`/`nan` for non-finite values.
std::string toDisplayString(double value);
std::string toDisplayString(Rational const& value);

}  // namespace utility
}  // namespace stormlet
