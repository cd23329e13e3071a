#include "cotol/extended_value.hpp"

#include <limits>

#include "cotol/errors.hpp"

namespace cotol {

const Rational& ExtendedValue::value() const {
  if (kind_ != Kind::Finite) {
    throw DomainError("value() called on " + to_string());
  }
  return value_;
}

std::strong_ordering ExtendedValue::operator<=>(const ExtendedValue& other) const {
  if (kind_ != other.kind_ || kind_ != Kind::Finite) {
    return static_cast<int>(kind_) <=> static_cast<int>(other.kind_);
  }
  const int c = cmp(value_, other.value_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

ExtendedValue operator+(const ExtendedValue& a, const ExtendedValue& b) {
  if (a.is_finite() && b.is_finite()) return ExtendedValue(Rational(a.value_ + b.value_));
  if ((a.is_infinite() && b.is_negative_infinite()) ||
      (a.is_negative_infinite() && b.is_infinite())) {
    throw DomainError("inf + (-inf) is undefined");
  }
  return a.is_finite() ? b : a;
}

ExtendedValue operator-(const ExtendedValue& a, const ExtendedValue& b) {
  if (a.is_finite() && b.is_finite()) return ExtendedValue(Rational(a.value_ - b.value_));
  if (!b.is_finite()) {
    throw DomainError("subtracting an infinite value: " + a.to_string() + " - " + b.to_string());
  }
  return a;
}

std::string ExtendedValue::to_string() const {
  switch (kind_) {
    case Kind::Infinity:
      return "inf";
    case Kind::NegativeInfinity:
      return "-inf";
    case Kind::Finite:
      break;
  }
  return cotol::to_string(value_);
}

ExtendedValue ExtendedValue::parse(const std::string& text) {
  if (text == "inf") return infinity();
  if (text == "-inf") return negative_infinity();
  return ExtendedValue(parse_rational(text));
}

Real ExtendedValue::to_real() const {
  switch (kind_) {
    case Kind::Infinity:
      return std::numeric_limits<Real>::infinity();
    case Kind::NegativeInfinity:
      return -std::numeric_limits<Real>::infinity();
    case Kind::Finite:
      break;
  }
  return cotol::to_real(value_);
}

std::ostream& operator<<(std::ostream& out, const ExtendedValue& value) {
  return out << value.to_string();
}

}  // namespace cotol
