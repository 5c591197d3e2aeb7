#pragma once

#include <string>

#include <boost/rational.hpp>

#include "artin/errors.hpp"

namespace artin {

/// An exact angle (num/den)*pi. All link metric arithmetic stays rational.
struct AngularValue {
  boost::rational<long long> coeff;  // multiples of pi

  AngularValue() : coeff(0) {}
  AngularValue(long long num, long long den) : coeff(num, den) {
    if (den == 0) fail(ErrorKind::Validation, "zero denominator");
  }
  explicit AngularValue(boost::rational<long long> c) : coeff(c) {}

  long long num() const { return coeff.numerator(); }
  long long den() const { return coeff.denominator(); }

  friend AngularValue operator+(AngularValue a, AngularValue b) {
    return AngularValue(a.coeff + b.coeff);
  }
  friend AngularValue operator-(AngularValue a, AngularValue b) {
    return AngularValue(a.coeff - b.coeff);
  }
  friend AngularValue operator*(long long k, AngularValue a) {
    return AngularValue(a.coeff * k);
  }
  friend auto operator<=>(const AngularValue& a, const AngularValue& b) {
    if (a.coeff < b.coeff) return std::strong_ordering::less;
    if (b.coeff < a.coeff) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  friend bool operator==(const AngularValue&, const AngularValue&) = default;

  std::string to_string() const {
    if (coeff.numerator() == 0) return "0";
    std::string s = std::to_string(coeff.numerator());
    if (coeff.denominator() != 1) s += "/" + std::to_string(coeff.denominator());
    return s + " pi";
  }
};

inline AngularValue angle_pi() { return AngularValue(1, 1); }
inline AngularValue angle_zero() { return AngularValue(); }

/// Distance answers from ball-backed searches: exact when realized strictly
/// inside the constructed region, otherwise only a lower bound is certain.
struct LinkDistance {
  enum class Kind { Exact, AtLeast } kind = Kind::Exact;
  AngularValue value;

  static LinkDistance exact(AngularValue v) { return {Kind::Exact, v}; }
  static LinkDistance at_least(AngularValue v) { return {Kind::AtLeast, v}; }

  bool exact_value() const { return kind == Kind::Exact; }

  /// True when this distance certifies >= threshold.
  bool at_least_threshold(const AngularValue& threshold) const {
    return value >= threshold;
  }

  std::string to_string() const {
    return (kind == Kind::Exact ? "" : ">= ") + value.to_string();
  }

  friend bool operator==(const LinkDistance&, const LinkDistance&) = default;
};

}  // namespace artin
