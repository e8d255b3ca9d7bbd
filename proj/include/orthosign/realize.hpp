#pragma once

#include "orthosign/exact.hpp"
#include "orthosign/sign_pattern.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace orthosign {

enum class DetTarget { Plus, Minus, Any };

std::string to_string(DetTarget t);
/// Accepts "+1", "1", "+", "-1", "-", "any".
std::optional<DetTarget> parse_det_target(std::string_view s);

/// Strict upper triangle of a skew-symmetric matrix, row by row.
struct SkewParams {
  std::size_t n = 0;
  std::vector<double> x;

  static SkewParams zeros(std::size_t n) { return {n, std::vector<double>(n * (n - 1) / 2, 0.0)}; }
  FloatMatrix to_matrix() const;
};

struct SearchConfig {
  std::size_t restarts = 50;
  std::size_t max_iters = 2000;
  double margin = 0.05;
  double zero_tol = 1e-9;
  double ortho_tol = 1e-9;

  // Backtracking line search on the chart coordinates.
  double initial_step = 1.0;
  double max_step = 16.0;
  double shrink = 0.5;
  double armijo = 1e-4;
  std::size_t max_backtracks = 50;
  // Gradient descent gives up on a basin when the objective improved by
  // less than stall_rel_tol (relative) over stall_window iterations.
  std::size_t stall_window = 100;
  double stall_rel_tol = 1e-9;
  // Damped Gauss-Newton polish after descent.
  std::size_t polish_iters = 60;

  // Scale of the random chart coordinates drawn at each restart.
  double start_spread = 1.0;

  std::uint64_t rng_seed = 0;
  /// Wall-clock cap for a whole search; zero means unlimited. A search cut
  /// short by the budget is no longer reproducible from the seed alone.
  std::chrono::milliseconds time_budget{0};
  /// When set, successful results are passed through rational_certify.
  std::optional<std::int64_t> denom_bound;

  /// Throws std::invalid_argument on out-of-range settings.
  void validate() const;
};

struct RealizationResult {
  FloatMatrix q;
  int det_sign = 0;
  double objective_value = 0.0;
  double ortho_residual = 0.0;
  double min_margin = 0.0;
  double max_zero_violation = 0.0;
  std::size_t restart = 0;     // restart index that produced the find
  std::size_t iterations = 0;  // descent + polish iterations in that restart
  std::optional<RatMatrix> certificate;
};

// ---------------------------------------------------------------------------

/// base * (I - A)(I + A)^{-1}
FloatMatrix cayley(const SkewParams& a, const FloatMatrix& base);

/// Sum over signed positions of max(0, margin - S_ij Q_ij)^2 plus the sum
/// of squares over zero positions.
double objective(const SignPattern& s, const FloatMatrix& q, double margin);
/// d objective / d Q, entrywise.
FloatMatrix objective_gradient(const SignPattern& s, const FloatMatrix& q, double margin);
/// Gradient of objective(S, cayley(a, base), margin) with respect to a.x.
std::vector<double> chart_gradient(const SignPattern& s, const SkewParams& a,
                                   const FloatMatrix& base, double margin);

/// max |Q^T Q - I|
double ortho_residual(const FloatMatrix& q);
/// min over S_ij != 0 of S_ij Q_ij (+inf when S has no signed entry).
double min_margin(const SignPattern& s, const FloatMatrix& q);
/// max over S_ij = 0 of |Q_ij| (0 when S has no zero entry).
double max_zero_violation(const SignPattern& s, const FloatMatrix& q);
int float_det_sign(const FloatMatrix& q);

/// Nearest orthogonal matrix (polar factor). Throws DegenerateInput for
/// singular or non-finite input.
FloatMatrix reorthonormalize(const FloatMatrix& m);

/// Adds entrywise uniform noise in [-eps, eps] and reorthonormalizes.
FloatMatrix perturb(const FloatMatrix& q, double eps, std::mt19937_64& rng);

/// Random signed permutation matrix with the requested determinant.
FloatMatrix random_signed_permutation(std::size_t n, int det, std::mt19937_64& rng);

std::optional<RealizationResult> search_realization(const SignPattern& s, DetTarget target,
                                                    const SearchConfig& cfg);

/// Single-basin polish from an approximately orthogonal seed.
std::optional<RealizationResult> refine_from(const FloatMatrix& q0, const SignPattern& s,
                                             DetTarget target, const SearchConfig& cfg);

/// Best approximation p/q of x with q <= denom_bound (continued fractions).
Rational best_rational(double x, std::int64_t denom_bound);

/// Entrywise best rational approximation followed by the exact
/// orthogonality and sign-pattern checks. Returns nullopt if either fails.
std::optional<RatMatrix> rational_certify(const FloatMatrix& q, std::int64_t denom_bound,
                                          double zero_tol = 0.0);

FloatMatrix to_float(const RatMatrix& m);
FloatMatrix to_float(const QuadMatrix& m);

}  // namespace orthosign
