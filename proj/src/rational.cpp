#include "cotol/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "cotol/errors.hpp"

namespace cotol {
namespace {

bool is_integer_literal(std::string_view text) {
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    text.remove_prefix(1);
  }
  if (text.empty()) return false;
  for (char ch : text) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
    text.remove_prefix(1);
  }
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
    text.remove_suffix(1);
  }
  const auto slash = text.find('/');
  const std::string_view numerator = text.substr(0, slash);
  const std::string_view denominator =
      slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!is_integer_literal(numerator) || !is_integer_literal(denominator) ||
      denominator.front() == '-' || denominator.front() == '+') {
    throw ParseError("not an exact rational: \"" + std::string(text) + "\"");
  }
  std::string num(numerator);
  if (num.front() == '+') num.erase(0, 1);
  mpz_class n(num, 10);
  mpz_class d(std::string(denominator), 10);
  if (d == 0) {
    throw ParseError("zero denominator in \"" + std::string(text) + "\"");
  }
  Rational result(n, d);
  result.canonicalize();
  return result;
}

std::string to_string(const Rational& value) {
  Rational canonical = value;
  canonical.canonicalize();
  return canonical.get_str(10);
}

Real to_real(const Rational& value) {
  if (value == 0) return 0.0L;
  // mpq_get_d only keeps 53 bits; go through a 128-bit float for long double.
  mpf_class wide(value, 128);
  mp_exp_t exponent = 0;
  std::string digits = wide.get_str(exponent, 10, 30);
  bool negative = false;
  if (!digits.empty() && digits.front() == '-') {
    negative = true;
    digits.erase(0, 1);
  }
  const std::string literal =
      std::string(negative ? "-0." : "0.") + digits + "e" + std::to_string(exponent);
  return std::strtold(literal.c_str(), nullptr);
}

Rational round_to_grid(Real value, unsigned long denominator) {
  if (!std::isfinite(value)) {
    throw DomainError("cannot represent a non-finite search result as a rational");
  }
  const Real scaled = std::round(value * static_cast<Real>(denominator));
  char buffer[6000];
  std::snprintf(buffer, sizeof buffer, "%.0Lf", scaled);
  Rational result(mpz_class(buffer, 10), mpz_class(denominator));
  result.canonicalize();
  return result;
}

}  // namespace cotol
