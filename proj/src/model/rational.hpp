#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace elminer {

// Exact weights and supports. Never converted to floating point for comparisons.
using Rational = mpq_class;

// Parses "3/5", "0.8", "1", "-2.50". Throws std::invalid_argument on malformed input
// or a zero denominator. The result is canonicalized.
Rational parse_rational(std::string_view text);

// "a/b" in lowest terms, or "a" when the denominator is 1.
std::string to_fraction_string(const Rational& value);

double to_double(const Rational& value);

}  // namespace elminer
