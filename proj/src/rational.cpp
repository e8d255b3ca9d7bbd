#include "orthosign/rational.hpp"

#include "orthosign/errors.hpp"
#include "orthosign/quad.hpp"

#include <cctype>
#include <stdexcept>
#include <utility>

namespace orthosign {
namespace {

bool is_integer_literal(std::string_view s, bool allow_sign) {
  if (allow_sign && !s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

BigInt parse_integer(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  return BigInt(std::string(s), 10);
}

}  // namespace

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational::Rational(mpq_class v) : value_(std::move(v)) { value_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (!is_integer_literal(text, true))
      throw ParseError("invalid integer '" + std::string(text) + "'");
    return Rational(parse_integer(text));
  }
  const auto num = text.substr(0, slash);
  const auto den = text.substr(slash + 1);
  if (!is_integer_literal(num, true) || !is_integer_literal(den, false))
    throw ParseError("invalid fraction '" + std::string(text) + "'");
  BigInt d = parse_integer(den);
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  return Rational(parse_integer(num), d);
}

std::string Rational::str() const {
  if (value_.get_den() == 1) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational& Rational::operator+=(const Rational& o) {
  value_ += o.value_;
  return *this;
}
Rational& Rational::operator-=(const Rational& o) {
  value_ -= o.value_;
  return *this;
}
Rational& Rational::operator*=(const Rational& o) {
  value_ *= o.value_;
  return *this;
}
Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  value_ /= o.value_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

// ---------------------------------------------------------------------------
// QuadRational

int QuadRational::sign() const {
  const int sa = a_.sign();
  const int sb = b_.sign();
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: compare a^2 with 2 b^2.
  const Rational a2 = a_ * a_;
  const Rational b2 = Rational(2) * b_ * b_;
  if (a2 == b2) return 0;  // unreachable for rational a, b; kept for totality
  return a2 > b2 ? sa : sb;
}

double QuadRational::to_double() const {
  static const double kSqrt2 = 1.4142135623730950488;
  return a_.to_double() + b_.to_double() * kSqrt2;
}

std::string QuadRational::str() const {
  if (b_.is_zero()) return a_.str();
  std::string tail = b_.str() + "*sqrt2";
  if (a_.is_zero()) return tail;
  if (b_.sign() > 0) return a_.str() + "+" + tail;
  return a_.str() + tail;  // b's own minus sign joins the terms
}

QuadRational QuadRational::parse(std::string_view text) {
  const std::string original(text);
  if (text.empty()) throw ParseError("empty entry");
  static constexpr std::string_view kRoot = "sqrt2";

  // Split at the last '+' or '-' that is not the leading sign; the second
  // term must then carry the sqrt2 factor.
  std::string_view first = text;
  std::string_view second;
  for (std::size_t i = text.size(); i-- > 1;) {
    if (text[i] == '+' || text[i] == '-') {
      first = text.substr(0, i);
      second = text.substr(i);
      break;
    }
  }

  auto parse_root_term = [&](std::string_view term) -> Rational {
    // term is "[sign]coef*sqrt2" or "[sign]sqrt2"
    if (term.size() < kRoot.size() || term.substr(term.size() - kRoot.size()) != kRoot)
      throw ParseError("invalid quadratic entry '" + original + "'");
    term.remove_suffix(kRoot.size());
    if (term.empty() || term == "+") return Rational(1);
    if (term == "-") return Rational(-1);
    if (term.back() != '*') throw ParseError("invalid quadratic entry '" + original + "'");
    term.remove_suffix(1);
    try {
      return Rational::parse(term);
    } catch (const ParseError&) {
      throw ParseError("invalid quadratic entry '" + original + "'");
    }
  };
  auto has_root = [&](std::string_view term) {
    return term.size() >= kRoot.size() && term.substr(term.size() - kRoot.size()) == kRoot;
  };

  try {
    if (second.empty()) {
      if (has_root(first)) return {Rational(0), parse_root_term(first)};
      return {Rational::parse(first), Rational(0)};
    }
    if (!has_root(second) || has_root(first))
      throw ParseError("invalid quadratic entry '" + original + "'");
    return {Rational::parse(first), parse_root_term(second)};
  } catch (const ParseError&) {
    throw ParseError("invalid entry '" + original + "'");
  }
}

QuadRational& QuadRational::operator+=(const QuadRational& o) {
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}
QuadRational& QuadRational::operator-=(const QuadRational& o) {
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}
QuadRational& QuadRational::operator*=(const QuadRational& o) {
  // (a + b r)(c + d r) = (ac + 2bd) + (ad + bc) r
  Rational a = a_ * o.a_ + Rational(2) * b_ * o.b_;
  Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}
QuadRational& QuadRational::operator/=(const QuadRational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  const Rational n = o.norm();
  *this *= o.conjugate();
  a_ /= n;
  b_ /= n;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const QuadRational& q) { return os << q.str(); }

}  // namespace orthosign
