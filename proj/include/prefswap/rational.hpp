#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace prefswap {

// All attribute values and certificate coefficients are exact rationals.
// Values are only ever compared, added and scaled, so arbitrary-precision
// rationals keep every check exact (no floating point anywhere).
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Parses "12", "-0.25", "1e3", "2.5e-1" or "p/q" into an exact rational.
// Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

// Renders a rational as "p/q", or just "p" when the denominator is one.
std::string to_fraction_string(const Rational& value);

}  // namespace prefswap
