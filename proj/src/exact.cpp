#include "orthosign/exact.hpp"

#include <utility>

namespace orthosign {
namespace {

template <typename T>
ExactMatrix<T> multiply(const ExactMatrix<T>& a, const ExactMatrix<T>& b) {
  if (a.cols() != b.rows())
    throw DimensionError("mat_mul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                         " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  ExactMatrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

template <typename T>
bool gram_is_identity(const ExactMatrix<T>& a) {
  if (!a.is_square()) return false;
  const std::size_t n = a.rows();
  // Column dot products; early exit on the first mismatch.
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = p; q < n; ++q) {
      T dot;
      for (std::size_t i = 0; i < n; ++i) dot += a(i, p) * a(i, q);
      if (dot != T(p == q ? 1 : 0)) return false;
    }
  return true;
}

void require_square(std::size_t rows, std::size_t cols, const char* op) {
  if (rows != cols) throw DimensionError(std::string(op) + ": matrix is not square");
}

}  // namespace

QuadMatrix to_quad(const RatMatrix& m) {
  QuadMatrix q(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) q(i, j) = QuadRational(m(i, j));
  return q;
}

RatMatrix mat_mul(const RatMatrix& a, const RatMatrix& b) { return multiply(a, b); }
QuadMatrix mat_mul(const QuadMatrix& a, const QuadMatrix& b) { return multiply(a, b); }

BigInt bareiss_det(std::vector<BigInt> m, std::size_t n) {
  if (m.size() != n * n) throw DimensionError("bareiss_det: entry count is not n*n");
  if (n == 0) return 1;
  auto at = [&](std::size_t i, std::size_t j) -> BigInt& { return m[i * n + j]; };

  int sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (at(k, k) == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && at(swap_row, k) == 0) ++swap_row;
      if (swap_row == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(swap_row, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt v = at(i, j) * at(k, k) - at(i, k) * at(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        at(i, j) = std::move(v);
      }
    }
    prev = at(k, k);
  }
  BigInt d = at(n - 1, n - 1);
  return sign > 0 ? d : BigInt(-d);
}

Rational det(const RatMatrix& a) {
  require_square(a.rows(), a.cols(), "det");
  const std::size_t n = a.rows();
  std::vector<BigInt> ints(n * n);
  BigInt cleared = 1;
  for (std::size_t i = 0; i < n; ++i) {
    BigInt row_lcm = 1;
    for (std::size_t j = 0; j < n; ++j) {
      const BigInt den = a(i, j).denominator();
      mpz_lcm(row_lcm.get_mpz_t(), row_lcm.get_mpz_t(), den.get_mpz_t());
    }
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& e = a(i, j);
      ints[i * n + j] = e.numerator() * (row_lcm / e.denominator());
    }
    cleared *= row_lcm;
  }
  return Rational(bareiss_det(std::move(ints), n), cleared);
}

QuadRational det(const QuadMatrix& a) {
  require_square(a.rows(), a.cols(), "det");
  const std::size_t n = a.rows();
  QuadMatrix m = a;
  QuadRational d(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && m(pivot, k).is_zero()) ++pivot;
    if (pivot == n) return QuadRational(0);
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(pivot, j));
      d = -d;
    }
    d *= m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m(i, k).is_zero()) continue;
      const QuadRational f = m(i, k) / m(k, k);
      for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return d;
}

bool is_orthogonal(const RatMatrix& a) { return gram_is_identity(a); }
bool is_orthogonal(const QuadMatrix& a) { return gram_is_identity(a); }

int det_sign(const RatMatrix& a) { return det(a).sign(); }
int det_sign(const QuadMatrix& a) { return det(a).sign(); }

std::vector<double> to_doubles(const RatMatrix& a) {
  std::vector<double> out;
  out.reserve(a.rows() * a.cols());
  for (const auto& e : a.entries()) out.push_back(e.to_double());
  return out;
}

}  // namespace orthosign
