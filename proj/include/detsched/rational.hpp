#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace detsched {

/// Exact rational number in lowest terms with a positive denominator.
///
/// Every time, cost and ratio in the library is a Rational; quantities such
/// as (1+beta)^n must compare exactly, which rules out floating point.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t value);  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t numerator, std::int64_t denominator);
  explicit Rational(mpq_class value);

  /// Parses "p" or "p/q" (optional leading '-', decimal digits only).
  /// Throws Error{ErrorKind::ParseError} on anything else, including
  /// decimal points and zero denominators.
  static Rational parse(std::string_view text);

  /// Canonical "p" or "p/q" form; parse(str()) reproduces the value.
  std::string str() const;

  std::string numerator_str() const;
  std::string denominator_str() const;

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const;

  /// Largest integer not exceeding this value.
  Rational floor() const;

  /// Nearest double; only for human-readable output.
  double to_double() const { return value_.get_d(); }

  Rational pow(unsigned exponent) const;

  const mpq_class& raw() const { return value_; }

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  friend Rational operator-(const Rational& value);

  friend bool operator==(const Rational& lhs, const Rational& rhs) {
    return cmp(lhs.value_, rhs.value_) == 0;
  }
  friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
    const int c = cmp(lhs.value_, rhs.value_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  mpq_class value_;
};

const Rational& max(const Rational& a, const Rational& b);
const Rational& min(const Rational& a, const Rational& b);

/// Renders a value with `significant` significant digits, rounding half to
/// even. Fixed notation for magnitudes in [1e-6, 1e15), scientific otherwise.
std::string to_decimal(const Rational& value, int significant = 10);

}  // namespace detsched
