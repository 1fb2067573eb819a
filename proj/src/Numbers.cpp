#include "stormlet/utility/Numbers.h"

#include <array>
#include <cctype>
#include <charconv>
#include <cstdio>

#include "stormlet/utility/Exceptions.h"

namespace stormlet::utility {

namespace {

[[noreturn]] void invalidNumber(std::string_view text) {
    throw Error(ErrorCode::InvalidArgument, "invalid number '" + std::string(text) + "'");
}

bool allDigits(std::string_view text) {
    if (text.empty()) {
        return false;
    }
    for (char c : text) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

Rational parseDecimal(std::string_view text) {
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '+' || body.front() == '-')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }

    long exponent = 0;
    if (auto e = body.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view exponentText = body.substr(e + 1);
        body = body.substr(0, e);
        bool exponentNegative = false;
        if (!exponentText.empty() && (exponentText.front() == '+' || exponentText.front() == '-')) {
            exponentNegative = exponentText.front() == '-';
            exponentText.remove_prefix(1);
        }
        if (!allDigits(exponentText) || exponentText.size() > 6) {
            invalidNumber(text);
        }
        exponent = std::stol(std::string(exponentText));
        if (exponentNegative) {
            exponent = -exponent;
        }
    }

    std::string digits;
    if (auto dot = body.find('.'); dot != std::string_view::npos) {
        std::string_view integral = body.substr(0, dot);
        std::string_view fraction = body.substr(dot + 1);
        if ((integral.empty() && fraction.empty()) || (!integral.empty() && !allDigits(integral)) || (!fraction.empty() && !allDigits(fraction))) {
            invalidNumber(text);
        }
        digits = std::string(integral) + std::string(fraction);
        exponent -= static_cast<long>(fraction.size());
    } else {
        if (!allDigits(body)) {
            invalidNumber(text);
        }
        digits = std::string(body);
    }

    mpz_class numerator(digits, 10);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    Rational result;
    if (exponent >= 0) {
        result = Rational(numerator * scale);
    } else {
        result = Rational(numerator, scale);
    }
    result.canonicalize();
    return negative ? Rational(-result) : result;
}

}  // namespace

Rational parseRational(std::string_view text) {
    if (text.empty()) {
        invalidNumber(text);
    }
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        Rational numerator = parseDecimal(text.substr(0, slash));
        Rational denominator = parseDecimal(text.substr(slash + 1));
        if (sgn(denominator) == 0) {
            throw Error(ErrorCode::DivisionByZero, "zero denominator in '" + std::string(text) + "'");
        }
        Rational result = numerator / denominator;
        result.canonicalize();
        return result;
    }
    return parseDecimal(text);
}

double parseDouble(std::string_view text) {
    if (text.find('/') != std::string_view::npos) {
        return parseRational(text).get_d();
    }
    std::string_view body = text;
    if (!body.empty() && body.front() == '+') {
        body.remove_prefix(1);
    }
    double value = 0.0;
    auto [end, error] = std::from_chars(body.data(), body.data() + body.size(), value);
    if (error != std::errc() || end != body.data() + body.size() || body.empty()) {
        invalidNumber(text);
    }
    return value;
}

std::string toRoundTripString(double value) {
    std::array<char, 64> buffer{};
    auto [end, error] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
    return std::string(buffer.data(), end);
}

std::string toRoundTripString(Rational const& value) {
    Rational canonical(value);
    canonical.canonicalize();
    return canonical.get_str();
}

std::string toDisplayString(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    std::array<char, 64> buffer{};
    std::snprintf(buffer.data(), buffer.size(), "%.6g", value);
    return buffer.data();
}

std::string toDisplayString(Rational const& value) {
    return toRoundTripString(value);
}

}  // namespace stormlet::utility
