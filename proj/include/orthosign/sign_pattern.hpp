#pragma once

#include "orthosign/errors.hpp"
#include "orthosign/exact.hpp"

#include <Eigen/Core>

#include <compare>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace orthosign {

using FloatMatrix = Eigen::MatrixXd;

enum class Sign : std::int8_t { Minus = -1, Zero = 0, Plus = 1 };

constexpr int to_int(Sign s) { return static_cast<int>(s); }
constexpr Sign sign_of_int(int v) { return v < 0 ? Sign::Minus : (v > 0 ? Sign::Plus : Sign::Zero); }
constexpr Sign operator*(Sign a, Sign b) { return sign_of_int(to_int(a) * to_int(b)); }
char to_char(Sign s);

/// Square matrix of signs. Ordering is lexicographic over the row-major
/// entries with Minus < Zero < Plus, which is also the order used to pick
/// canonical orbit representatives.
class SignPattern {
 public:
  explicit SignPattern(std::size_t n);
  SignPattern(std::size_t n, std::vector<Sign> entries);

  /// Rows of '+', '-', '0', one row per line. Blank lines and surrounding
  /// whitespace are ignored. Throws ParseError with line/column.
  static SignPattern parse(std::string_view text);

  /// Base-3 code with the (0,0) entry most significant; digit = sign + 1.
  /// Code order coincides with pattern order. Valid for n*n <= 40.
  std::uint64_t code() const;
  static SignPattern from_code(std::size_t n, std::uint64_t code);

  std::size_t order() const { return n_; }
  Sign operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  Sign& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
  std::span<const Sign> entries() const { return entries_; }

  std::vector<Sign> row(std::size_t i) const;
  std::vector<Sign> col(std::size_t j) const;
  SignPattern transpose() const;

  /// Text format, newline-terminated rows.
  std::string str() const;
  /// One string per row, for JSON reports.
  std::vector<std::string> row_strings() const;

  friend bool operator==(const SignPattern&, const SignPattern&) = default;
  friend std::strong_ordering operator<=>(const SignPattern& a, const SignPattern& b);

 private:
  std::size_t n_;
  std::vector<Sign> entries_;
};

// ---------------------------------------------------------------------------
// Extraction

SignPattern sign_pattern_of(const RatMatrix& m);
SignPattern sign_pattern_of(const QuadMatrix& m);
/// |x| <= zero_tol maps to Zero. zero_tol must be nonnegative.
SignPattern sign_pattern_of(const FloatMatrix& m, double zero_tol);

// ---------------------------------------------------------------------------
// Combinatorial necessary conditions

/// True iff the entrywise products of u and v contain both signs or are all
/// zero, i.e. a zero dot product is not ruled out by signs alone.
bool pair_compatible(std::span<const Sign> u, std::span<const Sign> v);

struct NecessaryFailure {
  enum class Kind { RowPair, ColPair, ZeroRow, ZeroCol };
  Kind kind;
  std::size_t i;  // 0-based
  std::size_t j;  // second line of a pair; equals i for zero lines
  friend bool operator==(const NecessaryFailure&, const NecessaryFailure&) = default;
};

struct NecessaryReport {
  bool pass = true;
  std::vector<NecessaryFailure> failures;
};

/// Reports every incompatible row pair, column pair and all-zero line.
/// A failing report means S does not allow orthogonality; passing is only
/// necessary.
NecessaryReport necessary_check(const SignPattern& s);

std::string describe(const NecessaryFailure& f);

// ---------------------------------------------------------------------------
// Waters' family: -1 at (k,k) for k = 2..n, +1 elsewhere.

struct WatersPattern {
  SignPattern pattern;
  int asserted_det_sign;  // (-1)^(n-1)
};

WatersPattern waters_pattern(std::size_t n);

// ---------------------------------------------------------------------------
// Symmetry group: optional transpose, then B(i,j) = r_i c_j M(p(i), q(j)).

struct GroupElement {
  std::vector<int> row_signs;
  std::vector<int> col_signs;
  std::vector<std::size_t> row_perm;
  std::vector<std::size_t> col_perm;
  bool transpose = false;

  static GroupElement identity(std::size_t n);
  static GroupElement random(std::size_t n, std::mt19937_64& rng);
  /// Negates row i only.
  static GroupElement negate_row(std::size_t n, std::size_t i);

  std::size_t order() const { return row_signs.size(); }
  /// Factor by which the action multiplies determinants.
  int det_factor() const;
  /// Throws DimensionError if the element is not a valid element of order n.
  void validate(std::size_t n) const;
};

int permutation_sign(std::span<const std::size_t> perm);

SignPattern act(const GroupElement& g, const SignPattern& s);
RatMatrix act(const GroupElement& g, const RatMatrix& m);
QuadMatrix act(const GroupElement& g, const QuadMatrix& m);
FloatMatrix act(const GroupElement& g, const FloatMatrix& m);

inline constexpr std::size_t kMaxCanonicalOrder = 4;

/// Lexicographically smallest pattern in the orbit of s. Brute force over
/// the whole group; throws UnsupportedOrder for n > 4.
SignPattern canonical_form(const SignPattern& s);

/// Codes of every pattern in the orbit of s (deduplicated, ascending).
std::vector<std::uint64_t> orbit_codes(const SignPattern& s);

}  // namespace orthosign
