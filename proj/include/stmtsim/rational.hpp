#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace stmtsim {

/// Exact arbitrary-precision rational used for edit costs, distances and
/// constant folding.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// "3", "-5/2".
std::string to_string(const Rational &r);

/// Nearest double. Correctly rounded whenever numerator and denominator are
/// exactly representable.
double to_double(const Rational &r);

/// Accepts integers ("12", "-3"), fractions ("7/4") and finite decimals
/// ("0.25", "-1.5e-2"). Returns nullopt on anything else.
std::optional<Rational> parse_rational(std::string_view text);

/// Shortest decimal text that round-trips the double, with a trailing ".0"
/// for integral values ("1.0", "0.23809523809523808", "-inf").
std::string format_double(double value);

/// Fixed two-decimal rendering used for table-style display columns.
std::string format_fixed2(double value);

} // namespace stmtsim
