#include "detsched/rational.hpp"

#include <cctype>
#include <utility>

#include "detsched/error.hpp"

namespace detsched {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

mpz_class pow10(long exponent) {
  mpz_class result;
  mpz_ui_pow_ui(result.get_mpz_t(), 10, static_cast<unsigned long>(exponent));
  return result;
}

}  // namespace

Rational::Rational(std::int64_t value) : value_(static_cast<long>(value)) {}

Rational::Rational(std::int64_t numerator, std::int64_t denominator)
    : value_(static_cast<long>(numerator), static_cast<long>(denominator)) {
  if (denominator == 0) throw Error(ErrorKind::ParseError, "zero denominator");
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  const std::string original(text);
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw Error(ErrorKind::ParseError, "not a rational literal \"" + original + "\" (expected p or p/q)");
  }
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw Error(ErrorKind::ParseError, "zero denominator in \"" + original + "\"");
  if (negative) n = -n;
  mpq_class q(n, d);
  q.canonicalize();
  return Rational(std::move(q));
}

std::string Rational::str() const { return value_.get_str(10); }

std::string Rational::numerator_str() const { return value_.get_num().get_str(10); }

std::string Rational::denominator_str() const { return value_.get_den().get_str(10); }

bool Rational::is_integer() const { return value_.get_den() == 1; }

Rational Rational::floor() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return Rational(mpq_class(q));
}

Rational Rational::pow(unsigned exponent) const {
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), value_.get_num_mpz_t(), exponent);
  mpz_pow_ui(d.get_mpz_t(), value_.get_den_mpz_t(), exponent);
  // Powers of a reduced fraction stay reduced.
  mpq_class q;
  mpq_set_num(q.get_mpq_t(), n.get_mpz_t());
  mpq_set_den(q.get_mpq_t(), d.get_mpz_t());
  return Rational(std::move(q));
}

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw std::domain_error("Rational division by zero");
  value_ /= rhs.value_;
  return *this;
}

Rational operator-(const Rational& value) { return Rational(mpq_class(-value.value_)); }

const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }

std::string to_decimal(const Rational& value, int significant) {
  if (significant < 1) significant = 1;
  if (value.is_zero()) return "0";

  mpq_class a = abs(value.raw());
  // Estimate floor(log10 a) from digit counts, then correct it exactly.
  long exponent = static_cast<long>(a.get_num().get_str(10).size()) -
                  static_cast<long>(a.get_den().get_str(10).size());
  auto ten_pow = [](long e) {
    return e >= 0 ? mpq_class(pow10(e)) : mpq_class(mpz_class(1), pow10(-e));
  };
  while (a < ten_pow(exponent)) --exponent;
  while (a >= ten_pow(exponent + 1)) ++exponent;

  const mpq_class scaled = a * ten_pow(significant - 1 - exponent);
  mpz_class digits;
  mpz_fdiv_q(digits.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  const mpq_class fraction = scaled - mpq_class(digits);
  const int half = cmp(fraction, mpq_class(1, 2));
  if (half > 0 || (half == 0 && mpz_odd_p(digits.get_mpz_t()))) ++digits;
  if (digits == pow10(significant)) {
    digits = pow10(significant - 1);
    ++exponent;
  }

  const std::string d = digits.get_str(10);
  std::string out = value.sign() < 0 ? "-" : "";
  if (exponent >= -6 && exponent < 15) {
    if (exponent >= 0) {
      const auto int_len = static_cast<std::size_t>(exponent + 1);
      if (int_len >= d.size()) {
        out += d + std::string(int_len - d.size(), '0');
      } else {
        out += d.substr(0, int_len) + "." + d.substr(int_len);
      }
    } else {
      out += "0." + std::string(static_cast<std::size_t>(-exponent - 1), '0') + d;
    }
  } else {
    out += d.substr(0, 1);
    if (d.size() > 1) out += "." + d.substr(1);
    out += exponent < 0 ? "e-" : "e+";
    const long mag = exponent < 0 ? -exponent : exponent;
    if (mag < 10) out += "0";
    out += std::to_string(mag);
  }
  return out;
}

}  // namespace detsched
