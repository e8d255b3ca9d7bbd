#include "orthosign/sign_pattern.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace orthosign {

char to_char(Sign s) {
  switch (s) {
    case Sign::Minus: return '-';
    case Sign::Zero: return '0';
    case Sign::Plus: return '+';
  }
  return '?';
}

SignPattern::SignPattern(std::size_t n) : n_(n), entries_(n * n, Sign::Zero) {
  if (n == 0) throw DimensionError("sign pattern order must be at least 1");
}

SignPattern::SignPattern(std::size_t n, std::vector<Sign> entries)
    : n_(n), entries_(std::move(entries)) {
  if (n == 0) throw DimensionError("sign pattern order must be at least 1");
  if (entries_.size() != n * n) throw DimensionError("sign pattern needs n*n entries");
}

SignPattern SignPattern::parse(std::string_view text) {
  std::vector<std::vector<Sign>> rows;
  std::vector<std::size_t> row_lines;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    std::vector<Sign> row;
    for (std::size_t c = 0; c < line.size(); ++c) {
      const char ch = line[c];
      if (ch == '+') {
        row.push_back(Sign::Plus);
      } else if (ch == '-') {
        row.push_back(Sign::Minus);
      } else if (ch == '0') {
        row.push_back(Sign::Zero);
      } else if (!std::isspace(static_cast<unsigned char>(ch))) {
        throw ParseError(std::string("unexpected character '") + ch + "' in sign pattern",
                         line_no, c + 1);
      }
    }
    if (!row.empty()) {
      rows.push_back(std::move(row));
      row_lines.push_back(line_no);
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  if (rows.empty()) throw ParseError("empty sign pattern", 1, 1);
  const std::size_t n = rows.size();
  std::vector<Sign> flat;
  flat.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n)
      throw ParseError("row has " + std::to_string(rows[i].size()) + " entries, expected " +
                           std::to_string(n) + " (pattern must be square)",
                       row_lines[i], 1);
    flat.insert(flat.end(), rows[i].begin(), rows[i].end());
  }
  return SignPattern(n, std::move(flat));
}

std::uint64_t SignPattern::code() const {
  std::uint64_t c = 0;
  for (Sign s : entries_) c = c * 3 + static_cast<std::uint64_t>(to_int(s) + 1);
  return c;
}

SignPattern SignPattern::from_code(std::size_t n, std::uint64_t code) {
  std::vector<Sign> e(n * n);
  for (std::size_t k = n * n; k-- > 0;) {
    e[k] = sign_of_int(static_cast<int>(code % 3) - 1);
    code /= 3;
  }
  return SignPattern(n, std::move(e));
}

std::vector<Sign> SignPattern::row(std::size_t i) const {
  return {entries_.begin() + static_cast<std::ptrdiff_t>(i * n_),
          entries_.begin() + static_cast<std::ptrdiff_t>((i + 1) * n_)};
}

std::vector<Sign> SignPattern::col(std::size_t j) const {
  std::vector<Sign> c(n_);
  for (std::size_t i = 0; i < n_; ++i) c[i] = (*this)(i, j);
  return c;
}

SignPattern SignPattern::transpose() const {
  SignPattern t(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

std::string SignPattern::str() const {
  std::string out;
  for (const auto& r : row_strings()) out += r + "\n";
  return out;
}

std::vector<std::string> SignPattern::row_strings() const {
  std::vector<std::string> out(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) out[i].push_back(to_char((*this)(i, j)));
  return out;
}

std::strong_ordering operator<=>(const SignPattern& a, const SignPattern& b) {
  if (auto c = a.n_ <=> b.n_; c != 0) return c;
  for (std::size_t k = 0; k < a.entries_.size(); ++k)
    if (auto c = to_int(a.entries_[k]) <=> to_int(b.entries_[k]); c != 0) return c;
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------

namespace {
template <typename M>
SignPattern exact_pattern(const M& m) {
  if (!m.is_square()) throw DimensionError("sign_pattern_of: matrix is not square");
  SignPattern s(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) s(i, j) = sign_of_int(m(i, j).sign());
  return s;
}
}  // namespace

SignPattern sign_pattern_of(const RatMatrix& m) { return exact_pattern(m); }
SignPattern sign_pattern_of(const QuadMatrix& m) { return exact_pattern(m); }

SignPattern sign_pattern_of(const FloatMatrix& m, double zero_tol) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw DimensionError("sign_pattern_of: matrix is not square");
  if (!(zero_tol >= 0.0)) throw std::invalid_argument("zero_tol must be nonnegative");
  const auto n = static_cast<std::size_t>(m.rows());
  SignPattern s(n);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const double x = m(i, j);
      s(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
          std::abs(x) <= zero_tol ? Sign::Zero : (x > 0 ? Sign::Plus : Sign::Minus);
    }
  return s;
}

// ---------------------------------------------------------------------------

bool pair_compatible(std::span<const Sign> u, std::span<const Sign> v) {
  if (u.size() != v.size()) throw DimensionError("pair_compatible: length mismatch");
  bool pos = false;
  bool neg = false;
  for (std::size_t k = 0; k < u.size(); ++k) {
    const Sign p = u[k] * v[k];
    pos |= p == Sign::Plus;
    neg |= p == Sign::Minus;
  }
  return pos == neg;
}

NecessaryReport necessary_check(const SignPattern& s) {
  NecessaryReport report;
  const std::size_t n = s.order();
  auto all_zero = [](const std::vector<Sign>& line) {
    return std::all_of(line.begin(), line.end(), [](Sign x) { return x == Sign::Zero; });
  };
  std::vector<std::vector<Sign>> rows;
  std::vector<std::vector<Sign>> cols;
  for (std::size_t i = 0; i < n; ++i) {
    rows.push_back(s.row(i));
    cols.push_back(s.col(i));
  }
  for (std::size_t i = 0; i < n; ++i)
    if (all_zero(rows[i])) report.failures.push_back({NecessaryFailure::Kind::ZeroRow, i, i});
  for (std::size_t j = 0; j < n; ++j)
    if (all_zero(cols[j])) report.failures.push_back({NecessaryFailure::Kind::ZeroCol, j, j});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = i + 1; k < n; ++k)
      if (!pair_compatible(rows[i], rows[k]))
        report.failures.push_back({NecessaryFailure::Kind::RowPair, i, k});
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k)
      if (!pair_compatible(cols[j], cols[k]))
        report.failures.push_back({NecessaryFailure::Kind::ColPair, j, k});
  report.pass = report.failures.empty();
  return report;
}

std::string describe(const NecessaryFailure& f) {
  const auto a = std::to_string(f.i + 1);
  const auto b = std::to_string(f.j + 1);
  switch (f.kind) {
    case NecessaryFailure::Kind::RowPair: return "rows (" + a + "," + b + ") sign-incompatible";
    case NecessaryFailure::Kind::ColPair: return "columns (" + a + "," + b + ") sign-incompatible";
    case NecessaryFailure::Kind::ZeroRow: return "row " + a + " is all zero";
    case NecessaryFailure::Kind::ZeroCol: return "column " + a + " is all zero";
  }
  return {};
}

// ---------------------------------------------------------------------------

WatersPattern waters_pattern(std::size_t n) {
  SignPattern s(n, std::vector<Sign>(n * n, Sign::Plus));
  for (std::size_t k = 1; k < n; ++k) s(k, k) = Sign::Minus;
  return {std::move(s), (n - 1) % 2 == 0 ? 1 : -1};
}

// ---------------------------------------------------------------------------

GroupElement GroupElement::identity(std::size_t n) {
  GroupElement g;
  g.row_signs.assign(n, 1);
  g.col_signs.assign(n, 1);
  g.row_perm.resize(n);
  g.col_perm.resize(n);
  std::iota(g.row_perm.begin(), g.row_perm.end(), 0);
  std::iota(g.col_perm.begin(), g.col_perm.end(), 0);
  return g;
}

GroupElement GroupElement::random(std::size_t n, std::mt19937_64& rng) {
  GroupElement g = identity(n);
  std::bernoulli_distribution coin(0.5);
  for (auto& s : g.row_signs) s = coin(rng) ? -1 : 1;
  for (auto& s : g.col_signs) s = coin(rng) ? -1 : 1;
  std::shuffle(g.row_perm.begin(), g.row_perm.end(), rng);
  std::shuffle(g.col_perm.begin(), g.col_perm.end(), rng);
  g.transpose = coin(rng);
  return g;
}

GroupElement GroupElement::negate_row(std::size_t n, std::size_t i) {
  GroupElement g = identity(n);
  g.row_signs.at(i) = -1;
  return g;
}

int permutation_sign(std::span<const std::size_t> perm) {
  std::vector<bool> seen(perm.size(), false);
  int sign = 1;
  for (std::size_t start = 0; start < perm.size(); ++start) {
    if (seen[start]) continue;
    std::size_t len = 0;
    for (std::size_t k = start; !seen[k]; k = perm[k]) {
      seen[k] = true;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

int GroupElement::det_factor() const {
  int f = permutation_sign(row_perm) * permutation_sign(col_perm);
  for (int s : row_signs) f *= s;
  for (int s : col_signs) f *= s;
  return f;
}

void GroupElement::validate(std::size_t n) const {
  if (row_signs.size() != n || col_signs.size() != n || row_perm.size() != n ||
      col_perm.size() != n)
    throw DimensionError("group element order does not match operand");
  auto is_perm = [n](const std::vector<std::size_t>& p) {
    std::vector<bool> hit(n, false);
    for (auto v : p) {
      if (v >= n || hit[v]) return false;
      hit[v] = true;
    }
    return true;
  };
  auto unit = [](int s) { return s == 1 || s == -1; };
  if (!is_perm(row_perm) || !is_perm(col_perm))
    throw std::invalid_argument("group element permutation is not a bijection");
  if (!std::all_of(row_signs.begin(), row_signs.end(), unit) ||
      !std::all_of(col_signs.begin(), col_signs.end(), unit))
    throw std::invalid_argument("group element signs must be +1 or -1");
}

namespace {

// Shared action: `get(i, j)` reads the (possibly transposed) source and
// `scale(x, s)` multiplies by a unit sign.
template <typename Out, typename Get, typename Scale>
void apply_action(const GroupElement& g, std::size_t n, Get get, Scale scale, Out& out) {
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t si = g.row_perm[i];
      const std::size_t sj = g.col_perm[j];
      auto v = g.transpose ? get(sj, si) : get(si, sj);
      out(i, j) = scale(std::move(v), g.row_signs[i] * g.col_signs[j]);
    }
}

template <typename T>
ExactMatrix<T> act_exact(const GroupElement& g, const ExactMatrix<T>& m) {
  if (!m.is_square()) throw DimensionError("act: matrix is not square");
  g.validate(m.rows());
  ExactMatrix<T> out(m.rows(), m.cols());
  apply_action(
      g, m.rows(), [&](std::size_t i, std::size_t j) { return m(i, j); },
      [](T v, int s) { return s < 0 ? -v : v; }, out);
  return out;
}

}  // namespace

SignPattern act(const GroupElement& g, const SignPattern& s) {
  g.validate(s.order());
  SignPattern out(s.order());
  apply_action(
      g, s.order(), [&](std::size_t i, std::size_t j) { return s(i, j); },
      [](Sign v, int sg) { return v * sign_of_int(sg); }, out);
  return out;
}

RatMatrix act(const GroupElement& g, const RatMatrix& m) { return act_exact(g, m); }
QuadMatrix act(const GroupElement& g, const QuadMatrix& m) { return act_exact(g, m); }

FloatMatrix act(const GroupElement& g, const FloatMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("act: matrix is not square");
  const auto n = static_cast<std::size_t>(m.rows());
  g.validate(n);
  FloatMatrix out(m.rows(), m.cols());
  auto idx = [](std::size_t k) { return static_cast<Eigen::Index>(k); };
  auto cell = [&](std::size_t i, std::size_t j) -> double& { return out(idx(i), idx(j)); };
  apply_action(
      g, n, [&](std::size_t i, std::size_t j) { return m(idx(i), idx(j)); },
      [](double v, int s) { return s * v; }, cell);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// Visits every orbit element of s as a flat sign vector.
template <typename Visit>
void for_each_orbit_element(const SignPattern& s, Visit visit) {
  const std::size_t n = s.order();
  if (n > kMaxCanonicalOrder)
    throw UnsupportedOrder("orbit enumeration supports order <= " +
                           std::to_string(kMaxCanonicalOrder) + ", got " + std::to_string(n));
  std::vector<std::size_t> rp(n);
  std::vector<std::size_t> cp(n);
  std::vector<int> permuted(n * n);
  std::vector<int> out(n * n);
  const std::uint32_t sign_masks = 1u << n;
  for (int t = 0; t < 2; ++t) {
    std::iota(rp.begin(), rp.end(), 0);
    do {
      std::iota(cp.begin(), cp.end(), 0);
      do {
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j)
            permuted[i * n + j] = to_int(t ? s(cp[j], rp[i]) : s(rp[i], cp[j]));
        for (std::uint32_t rm = 0; rm < sign_masks; ++rm)
          for (std::uint32_t cm = 0; cm < sign_masks; ++cm) {
            for (std::size_t i = 0; i < n; ++i) {
              const int ri = (rm >> i) & 1u ? -1 : 1;
              for (std::size_t j = 0; j < n; ++j) {
                const int cj = (cm >> j) & 1u ? -1 : 1;
                out[i * n + j] = ri * cj * permuted[i * n + j];
              }
            }
            visit(out);
          }
      } while (std::next_permutation(cp.begin(), cp.end()));
    } while (std::next_permutation(rp.begin(), rp.end()));
  }
}

std::uint64_t flat_code(const std::vector<int>& flat) {
  std::uint64_t c = 0;
  for (int v : flat) c = c * 3 + static_cast<std::uint64_t>(v + 1);
  return c;
}

}  // namespace

SignPattern canonical_form(const SignPattern& s) {
  std::uint64_t best = s.code();
  for_each_orbit_element(s, [&](const std::vector<int>& flat) {
    best = std::min(best, flat_code(flat));
  });
  return SignPattern::from_code(s.order(), best);
}

std::vector<std::uint64_t> orbit_codes(const SignPattern& s) {
  std::vector<std::uint64_t> codes;
  for_each_orbit_element(s, [&](const std::vector<int>& flat) { codes.push_back(flat_code(flat)); });
  std::sort(codes.begin(), codes.end());
  codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
  return codes;
}

}  // namespace orthosign
