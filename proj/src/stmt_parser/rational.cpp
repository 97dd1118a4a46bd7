#include "stmtsim/rational.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>

namespace stmtsim {

std::string to_string(const Rational &r)
{
    if (denominator(r) == 1)
        return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

double to_double(const Rational &r)
{
    static const BigInt kExact = BigInt(1) << 53;
    const BigInt &num = numerator(r);
    const BigInt &den = denominator(r);
    if (abs(num) <= kExact && den <= kExact)
        return num.convert_to<double>() / den.convert_to<double>();
    return r.convert_to<double>();
}

namespace {

std::optional<BigInt> parse_integer(std::string_view text)
{
    if (text.empty())
        return std::nullopt;
    std::size_t i = 0;
    bool negative = false;
    if (text[0] == '+' || text[0] == '-') {
        negative = text[0] == '-';
        i = 1;
    }
    if (i == text.size())
        return std::nullopt;
    BigInt value = 0;
    for (; i < text.size(); ++i) {
        if (text[i] < '0' || text[i] > '9')
            return std::nullopt;
        value = value * 10 + (text[i] - '0');
    }
    return negative ? BigInt(-value) : value;
}

} // namespace

std::optional<Rational> parse_rational(std::string_view text)
{
    if (text.empty())
        return std::nullopt;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        auto num = parse_integer(text.substr(0, slash));
        auto den = parse_integer(text.substr(slash + 1));
        if (!num || !den || *den == 0)
            return std::nullopt;
        return Rational(*num, *den);
    }

    // decimal with optional exponent
    std::string_view mantissa = text;
    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        mantissa = text.substr(0, e);
        auto exp_text = text.substr(e + 1);
        if (!exp_text.empty() && exp_text[0] == '+')
            exp_text.remove_prefix(1);
        auto [ptr, ec] = std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exponent);
        if (ec != std::errc() || ptr != exp_text.data() + exp_text.size() || std::labs(exponent) > 4000)
            return std::nullopt;
    }
    std::string digits;
    long scale = 0;
    bool seen_point = false;
    for (std::size_t i = 0; i < mantissa.size(); ++i) {
        char c = mantissa[i];
        if (i == 0 && (c == '+' || c == '-')) {
            digits.push_back(c);
            continue;
        }
        if (c == '.' && !seen_point) {
            seen_point = true;
            continue;
        }
        if (c < '0' || c > '9')
            return std::nullopt;
        digits.push_back(c);
        if (seen_point)
            ++scale;
    }
    auto value = parse_integer(digits);
    if (!value)
        return std::nullopt;
    Rational result(*value);
    long shift = exponent - scale;
    BigInt ten_pow = pow(BigInt(10), static_cast<unsigned>(std::labs(shift)));
    if (shift >= 0)
        result *= ten_pow;
    else
        result /= ten_pow;
    return result;
}

std::string format_double(double value)
{
    if (std::isnan(value))
        return "nan";
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    std::string out(buf, ptr);
    if (out.find_first_of(".e") == std::string::npos)
        out += ".0";
    return out;
}

std::string format_fixed2(double value)
{
    if (std::isnan(value))
        return "nan";
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", value);
    std::string out(buf);
    if (out == "-0.00")
        out = "0.00";
    return out;
}

} // namespace stmtsim
