#pragma once

#include "orthosign/rational.hpp"

#include <ostream>
#include <string>
#include <string_view>

namespace orthosign {

/// Element a + b*sqrt(2) of the field Q(sqrt 2).
class QuadRational {
 public:
  QuadRational() = default;
  QuadRational(Rational a) : a_(std::move(a)) {}  // NOLINT(google-explicit-constructor)
  QuadRational(long a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  QuadRational(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

  /// Parses "p/q", "r/s*sqrt2", "p/q+r/s*sqrt2" (either term optional,
  /// "sqrt2" alone meaning coefficient 1). Throws ParseError.
  static QuadRational parse(std::string_view text);

  const Rational& rational_part() const { return a_; }
  const Rational& sqrt2_part() const { return b_; }

  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  /// Exact sign of a + b*sqrt(2).
  int sign() const;
  double to_double() const;
  std::string str() const;

  QuadRational conjugate() const { return {a_, -b_}; }
  /// a^2 - 2 b^2, zero only for the zero element.
  Rational norm() const { return a_ * a_ - Rational(2) * b_ * b_; }

  QuadRational operator-() const { return {-a_, -b_}; }
  QuadRational& operator+=(const QuadRational& o);
  QuadRational& operator-=(const QuadRational& o);
  QuadRational& operator*=(const QuadRational& o);
  /// Throws std::domain_error on division by zero.
  QuadRational& operator/=(const QuadRational& o);

  friend QuadRational operator+(QuadRational x, const QuadRational& y) { return x += y; }
  friend QuadRational operator-(QuadRational x, const QuadRational& y) { return x -= y; }
  friend QuadRational operator*(QuadRational x, const QuadRational& y) { return x *= y; }
  friend QuadRational operator/(QuadRational x, const QuadRational& y) { return x /= y; }

  friend bool operator==(const QuadRational& x, const QuadRational& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }

 private:
  Rational a_;
  Rational b_;
};

std::ostream& operator<<(std::ostream& os, const QuadRational& q);

}  // namespace orthosign
