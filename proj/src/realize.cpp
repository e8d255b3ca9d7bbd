#include "orthosign/realize.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace orthosign {
namespace {

using Clock = std::chrono::steady_clock;
using Eigen::Index;

Index idx(std::size_t k) { return static_cast<Index>(k); }

class Deadline {
 public:
  explicit Deadline(std::chrono::milliseconds budget) {
    if (budget.count() > 0) at_ = Clock::now() + budget;
  }
  bool expired() const { return at_ && Clock::now() >= *at_; }

 private:
  std::optional<Clock::time_point> at_;
};

void require_shape(const SignPattern& s, const FloatMatrix& q) {
  if (q.rows() != q.cols() || static_cast<std::size_t>(q.rows()) != s.order())
    throw DimensionError("pattern of order " + std::to_string(s.order()) +
                         " does not match a " + std::to_string(q.rows()) + "x" +
                         std::to_string(q.cols()) + " matrix");
}

Sign sign_at(const SignPattern& s, Index i, Index j) {
  return s(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
}

/// Gradient in chart coordinates at A = 0, where dQ = -2 B dA.
std::vector<double> gradient_at_base(const SignPattern& s, const FloatMatrix& base,
                                     double margin) {
  const FloatMatrix m = -2.0 * base.transpose() * objective_gradient(s, base, margin);
  const Index n = base.rows();
  std::vector<double> g;
  g.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) g.push_back(m(i, j) - m(j, i));
  return g;
}

SkewParams scaled_params(std::size_t n, const std::vector<double>& dir, double t) {
  SkewParams a{n, dir};
  for (auto& v : a.x) v *= t;
  return a;
}

FloatMatrix hard_zero(const SignPattern& s, const FloatMatrix& q, double zero_tol) {
  FloatMatrix out = q;
  for (Index i = 0; i < q.rows(); ++i)
    for (Index j = 0; j < q.cols(); ++j)
      if (sign_at(s, i, j) == Sign::Zero && std::abs(q(i, j)) <= zero_tol) out(i, j) = 0.0;
  return out;
}

bool feasible(const SignPattern& s, const FloatMatrix& q, const SearchConfig& cfg) {
  if (max_zero_violation(s, q) > cfg.zero_tol) return false;
  if (min_margin(s, q) < cfg.margin - cfg.zero_tol) return false;
  return ortho_residual(hard_zero(s, q, cfg.zero_tol)) <= cfg.ortho_tol;
}

struct Basin {
  FloatMatrix q;
  std::size_t iterations = 0;
};

// Damped Gauss-Newton on the active residuals, re-centring the chart at
// every accepted step.
void polish(const SignPattern& s, Basin& basin, const SearchConfig& cfg, const Deadline& deadline) {
  const std::size_t n = s.order();
  const std::size_t params = n * (n - 1) / 2;
  if (params == 0) return;
  double lambda = 1e-3;
  FloatMatrix& b = basin.q;
  double f = objective(s, b, cfg.margin);
  for (std::size_t it = 0; it < cfg.polish_iters && !deadline.expired(); ++it) {
    if (feasible(s, b, cfg)) return;
    ++basin.iterations;

    std::vector<double> r;
    std::vector<std::pair<Index, Index>> cells;
    std::vector<double> dr_dq;  // d r / d Q_ab for each residual
    for (Index a = 0; a < b.rows(); ++a)
      for (Index c = 0; c < b.cols(); ++c) {
        const int sg = to_int(sign_at(s, a, c));
        if (sg == 0) {
          r.push_back(b(a, c));
          dr_dq.push_back(1.0);
          cells.emplace_back(a, c);
        } else if (const double gap = cfg.margin - sg * b(a, c); gap > 0) {
          r.push_back(gap);
          dr_dq.push_back(-sg);
          cells.emplace_back(a, c);
        }
      }
    if (r.empty()) return;

    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(idx(r.size()), idx(params));
    Eigen::VectorXd res(idx(r.size()));
    for (std::size_t k = 0; k < r.size(); ++k) {
      res(idx(k)) = r[k];
      const auto [a, c] = cells[k];
      std::size_t p = 0;
      for (Index i = 0; i < b.rows(); ++i)
        for (Index j = i + 1; j < b.rows(); ++j, ++p) {
          // dQ_ac/dx_p = -2 (B_ai [c==j] - B_aj [c==i])
          double d = 0.0;
          if (c == j) d -= 2.0 * b(a, i);
          if (c == i) d += 2.0 * b(a, j);
          jac(idx(k), idx(p)) = dr_dq[k] * d;
        }
    }
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd jtr = jac.transpose() * res;

    bool improved = false;
    while (lambda < 1e10) {
      Eigen::MatrixXd h = jtj;
      h.diagonal().array() += lambda;
      const Eigen::VectorXd step = h.ldlt().solve(-jtr);
      SkewParams a{n, std::vector<double>(step.data(), step.data() + step.size())};
      FloatMatrix cand = cayley(a, b);
      const double fc = objective(s, cand, cfg.margin);
      if (fc < f) {
        b = std::move(cand);
        f = fc;
        lambda = std::max(lambda / 3.0, 1e-12);
        improved = true;
        break;
      }
      lambda *= 4.0;
    }
    if (!improved) return;
  }
}

Basin descend(const SignPattern& s, const FloatMatrix& q0, const SearchConfig& cfg,
              const Deadline& deadline) {
  const std::size_t n = s.order();
  Basin basin{q0, 0};
  FloatMatrix& b = basin.q;
  double f = objective(s, b, cfg.margin);
  double step = cfg.initial_step;
  std::vector<double> history;
  history.reserve(cfg.max_iters);

  for (std::size_t it = 0; it < cfg.max_iters; ++it) {
    if (deadline.expired() || feasible(s, b, cfg)) return basin;
    const std::vector<double> g = gradient_at_base(s, b, cfg.margin);
    double g2 = 0.0;
    for (double v : g) g2 += v * v;
    if (g2 < 1e-30) break;

    bool accepted = false;
    double t = step;
    FloatMatrix cand;
    double fc = 0.0;
    for (std::size_t bt = 0; bt < cfg.max_backtracks; ++bt) {
      cand = cayley(scaled_params(n, g, -t), b);
      fc = objective(s, cand, cfg.margin);
      if (fc <= f - cfg.armijo * t * g2) {
        accepted = true;
        break;
      }
      t *= cfg.shrink;
    }
    if (!accepted) break;
    ++basin.iterations;
    b = std::move(cand);
    f = fc;
    step = std::min(t / cfg.shrink, cfg.max_step);
    if (it % 50 == 49) {
      b = reorthonormalize(b);
      f = objective(s, b, cfg.margin);
    }

    history.push_back(f);
    if (history.size() > cfg.stall_window &&
        f > (1.0 - cfg.stall_rel_tol) * history[history.size() - 1 - cfg.stall_window])
      break;
  }
  polish(s, basin, cfg, deadline);
  return basin;
}

std::optional<RealizationResult> finish(const SignPattern& s, Basin basin, const SearchConfig& cfg) {
  if (!feasible(s, basin.q, cfg)) return std::nullopt;
  RealizationResult res;
  res.q = hard_zero(s, basin.q, cfg.zero_tol);
  res.det_sign = float_det_sign(res.q);
  res.objective_value = objective(s, res.q, cfg.margin);
  res.ortho_residual = ortho_residual(res.q);
  res.min_margin = min_margin(s, res.q);
  res.max_zero_violation = max_zero_violation(s, res.q);
  res.iterations = basin.iterations;
  if (cfg.denom_bound) {
    auto cert = rational_certify(res.q, *cfg.denom_bound, cfg.zero_tol);
    if (cert && sign_pattern_of(*cert) == s && det_sign(*cert) == res.det_sign)
      res.certificate = std::move(cert);
  }
  return res;
}

bool matches(DetTarget target, int det) {
  return target == DetTarget::Any || (target == DetTarget::Plus ? det > 0 : det < 0);
}

}  // namespace

// ---------------------------------------------------------------------------

std::string to_string(DetTarget t) {
  switch (t) {
    case DetTarget::Plus: return "+1";
    case DetTarget::Minus: return "-1";
    case DetTarget::Any: return "any";
  }
  return {};
}

std::optional<DetTarget> parse_det_target(std::string_view s) {
  if (s == "+1" || s == "1" || s == "+") return DetTarget::Plus;
  if (s == "-1" || s == "-") return DetTarget::Minus;
  if (s == "any") return DetTarget::Any;
  return std::nullopt;
}

FloatMatrix SkewParams::to_matrix() const {
  if (x.size() != n * (n - 1) / 2) throw DimensionError("SkewParams: length must be n(n-1)/2");
  FloatMatrix a = FloatMatrix::Zero(idx(n), idx(n));
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j, ++k) {
      a(idx(i), idx(j)) = x[k];
      a(idx(j), idx(i)) = -x[k];
    }
  return a;
}

void SearchConfig::validate() const {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(margin) || margin >= 1.0) throw std::invalid_argument("margin must lie in (0, 1)");
  if (!positive(zero_tol)) throw std::invalid_argument("zero_tol must be positive");
  if (!positive(ortho_tol)) throw std::invalid_argument("ortho_tol must be positive");
  if (margin <= zero_tol) throw std::invalid_argument("margin must exceed zero_tol");
  if (!positive(initial_step) || !positive(max_step))
    throw std::invalid_argument("step sizes must be positive");
  if (!(shrink > 0.0 && shrink < 1.0)) throw std::invalid_argument("shrink must lie in (0, 1)");
  if (!(armijo > 0.0 && armijo < 1.0)) throw std::invalid_argument("armijo must lie in (0, 1)");
  if (!(start_spread >= 0.0)) throw std::invalid_argument("start_spread must be nonnegative");
  if (time_budget.count() < 0) throw std::invalid_argument("time_budget must be nonnegative");
  if (denom_bound && *denom_bound < 1) throw std::invalid_argument("denom_bound must be >= 1");
}

FloatMatrix cayley(const SkewParams& a, const FloatMatrix& base) {
  if (base.rows() != base.cols() || static_cast<std::size_t>(base.rows()) != a.n)
    throw DimensionError("cayley: base does not match parameter order");
  const FloatMatrix am = a.to_matrix();
  const FloatMatrix id = FloatMatrix::Identity(am.rows(), am.cols());
  // (I - A) and (I + A)^{-1} commute.
  const FloatMatrix c = (id + am).partialPivLu().solve(id - am);
  return base * c;
}

double objective(const SignPattern& s, const FloatMatrix& q, double margin) {
  require_shape(s, q);
  double f = 0.0;
  for (Index i = 0; i < q.rows(); ++i)
    for (Index j = 0; j < q.cols(); ++j) {
      const int sg = to_int(sign_at(s, i, j));
      if (sg == 0) {
        f += q(i, j) * q(i, j);
      } else {
        const double gap = margin - sg * q(i, j);
        if (gap > 0) f += gap * gap;
      }
    }
  return f;
}

FloatMatrix objective_gradient(const SignPattern& s, const FloatMatrix& q, double margin) {
  require_shape(s, q);
  FloatMatrix g = FloatMatrix::Zero(q.rows(), q.cols());
  for (Index i = 0; i < q.rows(); ++i)
    for (Index j = 0; j < q.cols(); ++j) {
      const int sg = to_int(sign_at(s, i, j));
      if (sg == 0) {
        g(i, j) = 2.0 * q(i, j);
      } else {
        const double gap = margin - sg * q(i, j);
        if (gap > 0) g(i, j) = -2.0 * gap * sg;
      }
    }
  return g;
}

std::vector<double> chart_gradient(const SignPattern& s, const SkewParams& a,
                                   const FloatMatrix& base, double margin) {
  const FloatMatrix am = a.to_matrix();
  const FloatMatrix id = FloatMatrix::Identity(am.rows(), am.cols());
  const FloatMatrix w = (id + am).inverse();
  const FloatMatrix c = w * (id - am);
  const FloatMatrix q = base * c;
  // df = <G, B dC>, dC = -(I + C) dA W  =>  df/dA = -(I + C)^T B^T G W^T
  const FloatMatrix m =
      -(id + c).transpose() * base.transpose() * objective_gradient(s, q, margin) * w.transpose();
  std::vector<double> g;
  g.reserve(a.x.size());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = i + 1; j < m.cols(); ++j) g.push_back(m(i, j) - m(j, i));
  return g;
}

double ortho_residual(const FloatMatrix& q) {
  const FloatMatrix d = q.transpose() * q - FloatMatrix::Identity(q.cols(), q.cols());
  return d.cwiseAbs().maxCoeff();
}

double min_margin(const SignPattern& s, const FloatMatrix& q) {
  require_shape(s, q);
  double m = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < q.rows(); ++i)
    for (Index j = 0; j < q.cols(); ++j)
      if (const int sg = to_int(sign_at(s, i, j)); sg != 0) m = std::min(m, sg * q(i, j));
  return m;
}

double max_zero_violation(const SignPattern& s, const FloatMatrix& q) {
  require_shape(s, q);
  double m = 0.0;
  for (Index i = 0; i < q.rows(); ++i)
    for (Index j = 0; j < q.cols(); ++j)
      if (sign_at(s, i, j) == Sign::Zero) m = std::max(m, std::abs(q(i, j)));
  return m;
}

int float_det_sign(const FloatMatrix& q) {
  const double d = q.determinant();
  return d > 0 ? 1 : (d < 0 ? -1 : 0);
}

FloatMatrix reorthonormalize(const FloatMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw DimensionError("reorthonormalize: matrix is not square");
  if (!m.allFinite()) throw DegenerateInput("reorthonormalize: non-finite entries");
  Eigen::JacobiSVD<FloatMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) <= 1e-12 * sv(0)) throw DegenerateInput("reorthonormalize: singular input");
  return svd.matrixU() * svd.matrixV().transpose();
}

FloatMatrix perturb(const FloatMatrix& q, double eps, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> noise(-eps, eps);
  FloatMatrix out = q;
  for (Index i = 0; i < q.rows(); ++i)
    for (Index j = 0; j < q.cols(); ++j) out(i, j) += noise(rng);
  return reorthonormalize(out);
}

FloatMatrix random_signed_permutation(std::size_t n, int det, std::mt19937_64& rng) {
  std::vector<std::size_t> perm(n);
  for (std::size_t k = 0; k < n; ++k) perm[k] = k;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::bernoulli_distribution coin(0.5);
  std::vector<int> signs(n);
  int d = permutation_sign(perm);
  for (auto& sg : signs) {
    sg = coin(rng) ? -1 : 1;
    d *= sg;
  }
  if (d != (det < 0 ? -1 : 1)) signs[0] = -signs[0];
  FloatMatrix p = FloatMatrix::Zero(idx(n), idx(n));
  for (std::size_t i = 0; i < n; ++i) p(idx(i), idx(perm[i])) = signs[i];
  return p;
}

std::optional<RealizationResult> search_realization(const SignPattern& s, DetTarget target,
                                                    const SearchConfig& cfg) {
  cfg.validate();
  if (!necessary_check(s).pass) return std::nullopt;
  const std::size_t n = s.order();
  const Deadline deadline(cfg.time_budget);
  for (std::size_t r = 0; r < cfg.restarts && !deadline.expired(); ++r) {
    std::seed_seq seq{static_cast<std::uint32_t>(cfg.rng_seed),
                      static_cast<std::uint32_t>(cfg.rng_seed >> 32),
                      static_cast<std::uint32_t>(r)};
    std::mt19937_64 rng(seq);
    std::bernoulli_distribution coin(0.5);
    const int det = target == DetTarget::Plus    ? 1
                    : target == DetTarget::Minus ? -1
                                                 : (coin(rng) ? 1 : -1);
    const FloatMatrix base = random_signed_permutation(n, det, rng);
    std::normal_distribution<double> gauss(0.0, cfg.start_spread);
    SkewParams x0 = SkewParams::zeros(n);
    for (auto& v : x0.x) v = gauss(rng);
    auto res = finish(s, descend(s, cayley(x0, base), cfg, deadline), cfg);
    if (res) {
      res->restart = r;
      return res;
    }
  }
  return std::nullopt;
}

std::optional<RealizationResult> refine_from(const FloatMatrix& q0, const SignPattern& s,
                                             DetTarget target, const SearchConfig& cfg) {
  cfg.validate();
  require_shape(s, q0);
  if (ortho_residual(q0) > 0.5)
    throw std::invalid_argument("refine_from: seed is not approximately orthogonal");
  if (!necessary_check(s).pass) return std::nullopt;
  const FloatMatrix start = reorthonormalize(q0);
  if (!matches(target, float_det_sign(start))) return std::nullopt;
  const Deadline deadline(cfg.time_budget);
  return finish(s, descend(s, start, cfg, deadline), cfg);
}

Rational best_rational(double x, std::int64_t denom_bound) {
  if (denom_bound < 1) throw std::invalid_argument("denom_bound must be >= 1");
  if (!std::isfinite(x)) throw std::invalid_argument("best_rational: non-finite input");
  const mpq_class exact(x);  // exact binary value of x
  const BigInt max_den(static_cast<long>(denom_bound));
  if (exact.get_den() <= max_den) return Rational(exact.get_num(), exact.get_den());

  // Convergents p1/q1 of the continued fraction until the next would
  // exceed the bound, then compare with the best semiconvergent.
  BigInt p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  BigInt num = exact.get_num(), den = exact.get_den();
  while (true) {
    BigInt a;
    mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    const BigInt q2 = q0 + a * q1;
    if (q2 > max_den) break;
    const BigInt p2 = p0 + a * p1;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const BigInt rem = num - a * den;
    num = den;
    den = rem;
  }
  BigInt k;
  const BigInt slack = max_den - q0;
  mpz_fdiv_q(k.get_mpz_t(), slack.get_mpz_t(), q1.get_mpz_t());
  const mpq_class semi(p0 + k * p1, q0 + k * q1);
  const mpq_class conv(p1, q1);
  const mpq_class d_semi = abs(mpq_class(semi - exact));
  const mpq_class d_conv = abs(mpq_class(conv - exact));
  const mpq_class& pick = d_conv <= d_semi ? conv : semi;
  return Rational(pick.get_num(), pick.get_den());
}

std::optional<RatMatrix> rational_certify(const FloatMatrix& q, std::int64_t denom_bound,
                                          double zero_tol) {
  if (q.rows() != q.cols() || q.rows() == 0) throw DimensionError("rational_certify: not square");
  const auto n = static_cast<std::size_t>(q.rows());
  RatMatrix r(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r(i, j) = best_rational(q(idx(i), idx(j)), denom_bound);
  if (sign_pattern_of(r) != sign_pattern_of(q, zero_tol)) return std::nullopt;
  if (!is_orthogonal(r)) return std::nullopt;
  return r;
}

FloatMatrix to_float(const RatMatrix& m) {
  FloatMatrix f(idx(m.rows()), idx(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) f(idx(i), idx(j)) = m(i, j).to_double();
  return f;
}

FloatMatrix to_float(const QuadMatrix& m) {
  FloatMatrix f(idx(m.rows()), idx(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) f(idx(i), idx(j)) = m(i, j).to_double();
  return f;
}

}  // namespace orthosign
