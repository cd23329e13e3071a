#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace cotol {

using Rational = mpq_class;

/// Floating type used by the product-objective searches.
using Real = long double;

/// Parses "7", "-3" or "7/2". Decimal points and exponents are rejected so
/// that costs stay exact. Throws ParseError.
Rational parse_rational(std::string_view text);

/// Canonical form: "7", "-3", "7/2".
std::string to_string(const Rational& value);

Real to_real(const Rational& value);

/// Rounds `value` to the nearest multiple of 1/denominator and returns it as
/// an exact rational.
Rational round_to_grid(Real value, unsigned long denominator);

}  // namespace cotol
