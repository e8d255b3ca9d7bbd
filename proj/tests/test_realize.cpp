#include "doctest.h"
#include "oracles.hpp"

#include "orthosign/fixtures.hpp"
#include "orthosign/realize.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>

using namespace orthosign;

namespace {

SkewParams random_skew(std::size_t n, double range, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-range, range);
  SkewParams a = SkewParams::zeros(n);
  for (auto& v : a.x) v = d(rng);
  return a;
}

SignPattern random_pattern(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-1, 1);
  std::vector<Sign> e(n * n);
  for (auto& s : e) s = sign_of_int(d(rng));
  return SignPattern(n, std::move(e));
}

double max_abs_diff(const FloatMatrix& a, const FloatMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

SearchConfig quick_config() {
  SearchConfig cfg;
  cfg.restarts = 20;
  cfg.max_iters = 500;
  return cfg;
}

}  // namespace

TEST_SUITE("realize") {
  TEST_CASE("cayley closed forms") {
    CHECK(cayley(SkewParams::zeros(4), FloatMatrix::Identity(4, 4)) == FloatMatrix::Identity(4, 4));

    // n = 2: (I - A)(I + A)^{-1} = [[1-a^2, -2a], [2a, 1-a^2]] / (1 + a^2)
    for (double a : {1.0, 0.3, -2.5}) {
      FloatMatrix expected(2, 2);
      expected << 1 - a * a, -2 * a, 2 * a, 1 - a * a;
      expected /= 1 + a * a;
      CHECK(max_abs_diff(cayley({2, {a}}, FloatMatrix::Identity(2, 2)), expected) < 1e-15);
    }
    FloatMatrix quarter(2, 2);
    quarter << 0, -1, 1, 0;
    CHECK(max_abs_diff(cayley({2, {1.0}}, FloatMatrix::Identity(2, 2)), quarter) < 1e-15);
    CHECK_THROWS_AS(cayley({3, {1.0}}, FloatMatrix::Identity(3, 3)), DimensionError);
  }

  TEST_CASE("cayley output is orthogonal and keeps the base determinant") {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t n = 2 + static_cast<std::size_t>(trial % 7);
      const int det = trial % 2 ? 1 : -1;
      const FloatMatrix base = random_signed_permutation(n, det, rng);
      CHECK(float_det_sign(base) == det);
      const FloatMatrix q = cayley(random_skew(n, 5.0, rng), base);
      CHECK(ortho_residual(q) <= 1e-12);
      CHECK(float_det_sign(q) == det);
    }
  }

  TEST_CASE("objective on Q1 and Q2") {
    const auto& pstar = fixtures().pstar;
    const FloatMatrix q1 = to_float(fixtures().q1);
    const FloatMatrix q2 = to_float(fixtures().q2);
    CHECK(objective(pstar, q1, 0.2) == 0.0);
    CHECK(objective(pstar, q1, 0.25) == 0.0);
    CHECK(objective(pstar, q2, 0.01) == 0.0);

    // 21 entries of Q1 have magnitude 1/4, each short of 0.3 by 0.05.
    double scan = 0.0;
    for (Eigen::Index i = 0; i < 7; ++i)
      for (Eigen::Index j = 0; j < 7; ++j) scan += std::pow(std::max(0.0, 0.3 - std::abs(q1(i, j))), 2);
    CHECK(objective(pstar, q1, 0.3) == doctest::Approx(scan).epsilon(1e-12));
    CHECK(objective(pstar, q1, 0.3) == doctest::Approx(0.0525).epsilon(1e-12));
    CHECK(objective(pstar, q2, 0.05) > 0.0);

    const SignPattern z(2, {Sign::Plus, Sign::Zero, Sign::Zero, Sign::Plus});
    FloatMatrix m(2, 2);
    m << 1, 0.1, -0.2, 1;
    CHECK(objective(z, m, 0.5) == doctest::Approx(0.05));
    CHECK_THROWS_AS(objective(z, q1, 0.1), DimensionError);
  }

  TEST_CASE("zero objective implies the sign pattern") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t n = 2 + static_cast<std::size_t>(trial % 3);
      const auto s = random_pattern(n, rng);
      FloatMatrix q(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
      std::uniform_real_distribution<double> mag(0.0, 1.0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
              trial % 2 ? to_int(s(i, j)) * mag(rng) : mag(rng) - 0.5;
      if (objective(s, q, 0.1) != 0.0) continue;
      const auto got = sign_pattern_of(q, 0.0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (s(i, j) != Sign::Zero) CHECK(got(i, j) == s(i, j));
          else CHECK(q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) == 0.0);
    }
  }

  TEST_CASE("chart gradient matches central differences") {
    std::mt19937_64 rng(77);
    const double h = 1e-6;
    int compared = 0;
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t n = 2 + static_cast<std::size_t>(trial % 6);
      const auto s = random_pattern(n, rng);
      const FloatMatrix base = cayley(random_skew(n, 1.0, rng), random_signed_permutation(n, 1, rng));
      const SkewParams a = random_skew(n, 1.0, rng);
      const double margin = 0.2;
      const auto g = chart_gradient(s, a, base, margin);
      std::vector<double> fd(a.x.size());
      for (std::size_t k = 0; k < a.x.size(); ++k) {
        SkewParams up = a, dn = a;
        up.x[k] += h;
        dn.x[k] -= h;
        fd[k] = (objective(s, cayley(up, base), margin) - objective(s, cayley(dn, base), margin)) / (2 * h);
      }
      double diff = 0.0, norm = 0.0;
      for (std::size_t k = 0; k < fd.size(); ++k) {
        diff += (g[k] - fd[k]) * (g[k] - fd[k]);
        norm += fd[k] * fd[k];
      }
      if (norm < 1e-12) continue;
      ++compared;
      CHECK(std::sqrt(diff / norm) <= 1e-4);
    }
    CHECK(compared > 80);
  }

  TEST_CASE("reorthonormalize") {
    CHECK(max_abs_diff(reorthonormalize(FloatMatrix::Identity(3, 3)), FloatMatrix::Identity(3, 3)) < 1e-15);
    CHECK(max_abs_diff(reorthonormalize(2.0 * FloatMatrix::Identity(3, 3)), FloatMatrix::Identity(3, 3)) <
          1e-15);
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> noise(-1e-3, 1e-3);
    const FloatMatrix q1 = to_float(fixtures().q1);
    FloatMatrix noisy = q1;
    for (Eigen::Index k = 0; k < noisy.size(); ++k) noisy.data()[k] += noise(rng);
    const FloatMatrix r = reorthonormalize(noisy);
    CHECK(ortho_residual(r) <= 1e-12);
    CHECK(max_abs_diff(r, noisy) <= 1e-2);
    CHECK(max_abs_diff(reorthonormalize(r), r) <= 1e-12);
    CHECK(max_abs_diff(reorthonormalize(q1), q1) <= 1e-12);

    FloatMatrix singular = FloatMatrix::Ones(3, 3);
    CHECK_THROWS_AS(reorthonormalize(singular), DegenerateInput);
    singular(0, 0) = std::nan("");
    CHECK_THROWS_AS(reorthonormalize(singular), DegenerateInput);
  }

  TEST_CASE("best_rational matches brute-force search") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> x(-3.0, 3.0);
    std::uniform_int_distribution<long> bound(1, 300);
    for (int trial = 0; trial < 300; ++trial) {
      const double v = x(rng);
      const long b = bound(rng);
      const Rational got = best_rational(v, b);
      CHECK(got.raw() == oracle::brute_best_rational(mpq_class(v), b));
    }
    CHECK(best_rational(0.0, 5) == Rational(0));
    CHECK(best_rational(0.625, 8) == Rational(5, 8));
    CHECK(best_rational(-10197.0 / 20014.0, 20014) == Rational(-10197, 20014));
    CHECK(best_rational(M_PI, 100) == Rational(311, 99));
    CHECK_THROWS(best_rational(0.5, 0));
  }

  TEST_CASE("rational_certify") {
    const auto c1 = rational_certify(to_float(fixtures().q1), 8);
    REQUIRE(c1.has_value());
    CHECK(*c1 == fixtures().q1);
    const auto c2 = rational_certify(to_float(fixtures().q2), 20014);
    REQUIRE(c2.has_value());
    CHECK(*c2 == fixtures().q2);
    // bound too small for Q2's entries
    CHECK_FALSE(rational_certify(to_float(fixtures().q2), 8).has_value());

    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 20; ++trial) {
      const FloatMatrix q = cayley(random_skew(4, 2.0, rng), FloatMatrix::Identity(4, 4));
      CHECK_FALSE(rational_certify(q, 10).has_value());
    }
    // 3-4-5 rotation is rational
    FloatMatrix r(2, 2);
    r << 0.6, -0.8, 0.8, 0.6;
    const auto c3 = rational_certify(r, 5);
    REQUIRE(c3.has_value());
    CHECK((*c3)(0, 1) == Rational(-4, 5));
  }

  TEST_CASE("search_realization") {
    const auto cfg = quick_config();
    const auto s3 = search_realization(fixtures().s3, DetTarget::Any, cfg);
    REQUIRE(s3.has_value());
    CHECK(s3->ortho_residual <= cfg.ortho_tol);
    CHECK(s3->max_zero_violation <= cfg.zero_tol);
    CHECK(s3->min_margin >= cfg.margin - cfg.zero_tol);
    CHECK(sign_pattern_of(s3->q, cfg.zero_tol) == fixtures().s3);
    CHECK(s3->q(0, 2) == 0.0);  // hard-zeroed

    CHECK_FALSE(search_realization(fixtures().t3, DetTarget::Any, cfg).has_value());

    const auto& w3 = waters_pattern(3).pattern;
    const auto plus = search_realization(w3, DetTarget::Plus, cfg);
    REQUIRE(plus.has_value());
    CHECK(plus->det_sign == 1);
    CHECK_FALSE(search_realization(w3, DetTarget::Minus, cfg).has_value());

    // order 1: [+] is realized by (1) only
    const SignPattern one(1, {Sign::Plus});
    CHECK(search_realization(one, DetTarget::Plus, cfg).has_value());
    CHECK_FALSE(search_realization(one, DetTarget::Minus, cfg).has_value());
  }

  TEST_CASE("search is deterministic for a fixed seed") {
    auto cfg = quick_config();
    cfg.rng_seed = 1234;
    const auto& w4 = waters_pattern(4).pattern;
    const auto a = search_realization(w4, DetTarget::Minus, cfg);
    const auto b = search_realization(w4, DetTarget::Minus, cfg);
    REQUIRE(a.has_value());
    REQUIRE(b.has_value());
    CHECK(a->q == b->q);
    CHECK(a->restart == b->restart);
    CHECK(a->iterations == b->iterations);
    CHECK(a->objective_value == b->objective_value);
  }

  TEST_CASE("refine_from") {
    SearchConfig cfg;
    cfg.margin = 0.01;
    const auto& pstar = fixtures().pstar;

    const auto exact = refine_from(to_float(fixtures().q1), pstar, DetTarget::Any, cfg);
    REQUIRE(exact.has_value());
    CHECK(exact->iterations == 0);
    cfg.margin = 0.25;
    const auto at_quarter = refine_from(to_float(fixtures().q1), pstar, DetTarget::Plus, cfg);
    REQUIRE(at_quarter.has_value());
    CHECK(at_quarter->objective_value <= 1e-24);
    CHECK(at_quarter->min_margin >= 0.25 - cfg.zero_tol);
    cfg.margin = 0.01;

    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 5; ++trial) {
      const auto r1 = refine_from(perturb(to_float(fixtures().q1), 1e-2, rng), pstar, DetTarget::Any, cfg);
      REQUIRE(r1.has_value());
      CHECK(sign_pattern_of(r1->q, 0.0) == pstar);
      CHECK(r1->det_sign == 1);
      const auto r2 = refine_from(perturb(to_float(fixtures().q2), 1e-2, rng), pstar, DetTarget::Any, cfg);
      REQUIRE(r2.has_value());
      CHECK(sign_pattern_of(r2->q, 0.0) == pstar);
      CHECK(r2->det_sign == -1);
    }
    // Cayley steps cannot change the determinant.
    CHECK_FALSE(refine_from(to_float(fixtures().q1), pstar, DetTarget::Minus, cfg).has_value());
    CHECK_THROWS(refine_from(FloatMatrix::Zero(7, 7), pstar, DetTarget::Any, cfg));
  }

  TEST_CASE("certificates agree with the reported determinant") {
    SearchConfig cfg;
    cfg.margin = 0.01;
    cfg.denom_bound = 20014;
    const auto r = refine_from(to_float(fixtures().q2), fixtures().pstar, DetTarget::Any, cfg);
    REQUIRE(r.has_value());
    REQUIRE(r->certificate.has_value());
    CHECK(*r->certificate == fixtures().q2);
    CHECK(det_sign(*r->certificate) == r->det_sign);
    CHECK(is_orthogonal(*r->certificate));
  }

  TEST_CASE("config validation") {
    SearchConfig cfg;
    cfg.margin = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.margin = 1.5;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = SearchConfig{};
    cfg.zero_tol = -1;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = SearchConfig{};
    cfg.denom_bound = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    CHECK_NOTHROW(SearchConfig{}.validate());
    CHECK(parse_det_target("+1") == DetTarget::Plus);
    CHECK(parse_det_target("-1") == DetTarget::Minus);
    CHECK(parse_det_target("any") == DetTarget::Any);
    CHECK_FALSE(parse_det_target("2").has_value());
  }
}
