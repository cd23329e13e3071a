#pragma once

#include <compare>
#include <ostream>
#include <string>

#include "cotol/rational.hpp"

namespace cotol {

/// A rational number extended by +infinity, plus a -infinity marker.
///
/// Tolerances only ever take finite non-negative values or +infinity. The
/// -infinity marker exists for "max over an empty set" in bottleneck
/// formulas, where it has to compare below every finite cost.
class ExtendedValue {
 public:
  enum class Kind { NegativeInfinity, Finite, Infinity };

  ExtendedValue() : ExtendedValue(Rational(0)) {}
  ExtendedValue(Rational value) : kind_(Kind::Finite), value_(std::move(value)) {}  // NOLINT
  ExtendedValue(long value) : ExtendedValue(Rational(value)) {}                      // NOLINT
  ExtendedValue(int value) : ExtendedValue(Rational(value)) {}                       // NOLINT

  static ExtendedValue infinity() { return ExtendedValue(Kind::Infinity); }
  static ExtendedValue negative_infinity() { return ExtendedValue(Kind::NegativeInfinity); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_infinite() const { return kind_ == Kind::Infinity; }
  bool is_negative_infinite() const { return kind_ == Kind::NegativeInfinity; }

  /// Throws DomainError unless finite.
  const Rational& value() const;

  std::strong_ordering operator<=>(const ExtendedValue& other) const;
  bool operator==(const ExtendedValue& other) const {
    return (*this <=> other) == std::strong_ordering::equal;
  }

  /// +inf + finite = +inf. Mixing +inf and -inf throws DomainError.
  friend ExtendedValue operator+(const ExtendedValue& a, const ExtendedValue& b);
  /// +inf - finite = +inf; finite - +inf and inf - inf throw DomainError.
  friend ExtendedValue operator-(const ExtendedValue& a, const ExtendedValue& b);
  ExtendedValue& operator+=(const ExtendedValue& other) { return *this = *this + other; }

  /// "inf", "-inf", or the canonical rational.
  std::string to_string() const;
  /// Inverse of to_string(). Throws ParseError.
  static ExtendedValue parse(const std::string& text);

  Real to_real() const;

 private:
  explicit ExtendedValue(Kind kind) : kind_(kind) {}

  Kind kind_;
  Rational value_;
};

std::ostream& operator<<(std::ostream& out, const ExtendedValue& value);

inline ExtendedValue min(const ExtendedValue& a, const ExtendedValue& b) { return b < a ? b : a; }
inline ExtendedValue max(const ExtendedValue& a, const ExtendedValue& b) { return a < b ? b : a; }

}  // namespace cotol
