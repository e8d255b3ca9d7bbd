#pragma once

#include "orthosign/errors.hpp"
#include "orthosign/quad.hpp"
#include "orthosign/rational.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace orthosign {

/// Dense row-major matrix over an exact scalar domain.
template <typename T>
class ExactMatrix {
 public:
  using Scalar = T;

  ExactMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {
    if (rows == 0 || cols == 0) throw DimensionError("matrix must be at least 1x1");
  }
  ExactMatrix(std::size_t rows, std::size_t cols, std::vector<T> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows == 0 || cols == 0) throw DimensionError("matrix must be at least 1x1");
    if (entries_.size() != rows * cols)
      throw DimensionError("entry count does not match shape");
  }

  static ExactMatrix identity(std::size_t n) {
    ExactMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  std::span<const T> entries() const { return entries_; }

  ExactMatrix transpose() const {
    ExactMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  ExactMatrix scaled(const T& s) const {
    ExactMatrix m = *this;
    for (auto& e : m.entries_) e *= s;
    return m;
  }

  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<T> entries_;
};

using RatMatrix = ExactMatrix<Rational>;
using QuadMatrix = ExactMatrix<QuadRational>;

/// Embeds a rational matrix into Q(sqrt 2).
QuadMatrix to_quad(const RatMatrix& m);

RatMatrix mat_mul(const RatMatrix& a, const RatMatrix& b);
QuadMatrix mat_mul(const QuadMatrix& a, const QuadMatrix& b);

/// Fraction-free (Bareiss) determinant of a square integer matrix given in
/// row-major order. Uses row swaps for zero pivots.
BigInt bareiss_det(std::vector<BigInt> entries, std::size_t n);

/// Clears each row's denominators, runs Bareiss on the integer matrix and
/// divides the row multipliers back out.
Rational det(const RatMatrix& a);
/// Gaussian elimination over the field Q(sqrt 2).
QuadRational det(const QuadMatrix& a);

bool is_orthogonal(const RatMatrix& a);
bool is_orthogonal(const QuadMatrix& a);

int det_sign(const RatMatrix& a);
int det_sign(const QuadMatrix& a);

std::vector<double> to_doubles(const RatMatrix& a);

}  // namespace orthosign
