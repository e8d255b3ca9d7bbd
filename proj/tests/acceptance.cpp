// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include "oracles.hpp"

#include "orthosign/fixtures.hpp"
#include "orthosign/hunt.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

using namespace orthosign;

namespace {

using Clock = std::chrono::steady_clock;

/// Collects failed checks for a single criterion.
struct Checker {
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

int failed_criteria = 0;

void criterion(int id, const std::string& title, double limit_seconds,
               const std::function<void(Checker&)>& body) {
  Checker c;
  const auto t0 = Clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.failures.push_back(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (secs > limit_seconds) {
    std::ostringstream msg;
    msg << "took " << secs << " s, limit " << limit_seconds << " s";
    c.failures.push_back(msg.str());
  }
  const bool pass = c.failures.empty();
  if (!pass) ++failed_criteria;
  std::printf("%s  criterion %d  %-58s %8.3f s\n", pass ? "PASS" : "FAIL", id, title.c_str(), secs);
  for (const auto& f : c.failures) std::printf("        - %s\n", f.c_str());
  std::fflush(stdout);
}

SignPattern random_pattern(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-1, 1);
  std::vector<Sign> e(n * n);
  for (auto& s : e) s = sign_of_int(d(rng));
  return SignPattern(n, std::move(e));
}

SkewParams random_skew(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> d(0.0, 1.0);
  SkewParams a = SkewParams::zeros(n);
  for (auto& v : a.x) v = d(rng);
  return a;
}

std::set<int> found_signs(const DetSignEvidence& ev) {
  std::set<int> out;
  if (ev.plus) out.insert(1);
  if (ev.minus) out.insert(-1);
  return out;
}

}  // namespace

int main() {
  const auto& fx = fixtures();

  criterion(1, "Q1, Q2: exact orthogonality, det, shared pattern", 1.0, [&](Checker& c) {
    c.expect(is_orthogonal(fx.q1), "Q1 orthogonal");
    c.expect(is_orthogonal(fx.q2), "Q2 orthogonal");
    c.expect(det(fx.q1) == Rational(1), "det Q1 = +1");
    c.expect(det(fx.q2) == Rational(-1), "det Q2 = -1");
    c.expect(sign_pattern_of(fx.q1) == fx.pstar, "pattern(Q1) = P*");
    c.expect(sign_pattern_of(fx.q2) == fx.pstar, "pattern(Q2) = P*");
  });

  criterion(2, "R3 orthogonal, T3 rejected on columns (1,2), S3 passes", 1.0, [&](Checker& c) {
    c.expect(is_orthogonal(fx.r3), "R3 orthogonal");
    c.expect(sign_pattern_of(fx.r3) == fx.s3, "pattern(R3) = S3");
    const auto t = necessary_check(fx.t3);
    c.expect(!t.pass, "T3 rejected");
    bool cites = false;
    for (const auto& f : t.failures) cites |= describe(f) == "columns (1,2) sign-incompatible";
    c.expect(cites, "T3 report cites columns (1,2)");
    c.expect(necessary_check(fx.s3).pass, "S3 passes");
  });

  criterion(3, "scaled determinants and Bareiss vs cofactor", 5.0, [&](Checker& c) {
    c.expect(det(fx.q1.scaled(Rational(8))) == Rational(BigInt("2097152")), "det(8 Q1)");
    BigInt m = 20014;
    BigInt m7 = 1;
    for (int i = 0; i < 7; ++i) m7 *= m;
    c.expect(det(fx.q2.scaled(Rational(m))) == Rational(BigInt(-m7)), "det(20014 Q2) = -20014^7");
    std::mt19937_64 rng(2024);
    int mismatches = 0;
    for (int trial = 0; trial < 200; ++trial) {
      const auto a = oracle::random_int_matrix(4, -50, 50, rng);
      if (bareiss_det(a, 4) != oracle::cofactor_det(a, 4)) ++mismatches;
    }
    c.expect(mismatches == 0, std::to_string(mismatches) + " Bareiss/cofactor mismatches");
  });

  criterion(4, "rational certification recovers Q1 and Q2", 1.0, [&](Checker& c) {
    const auto c1 = rational_certify(to_float(fx.q1), 8);
    const auto c2 = rational_certify(to_float(fx.q2), 20014);
    c.expect(c1.has_value() && *c1 == fx.q1, "certify(float Q1, 8) == Q1");
    c.expect(c2.has_value() && *c2 == fx.q2, "certify(float Q2, 20014) == Q2");
  });

  criterion(5, "classify_det_sign(P*) from perturbed seeds", 30.0, [&](Checker& c) {
    SearchConfig cfg;
    cfg.margin = 0.01;
    cfg.rng_seed = 7;
    std::mt19937_64 rng(7);
    const std::vector<FloatMatrix> seeds{perturb(to_float(fx.q1), 1e-2, rng),
                                         perturb(to_float(fx.q2), 1e-2, rng)};
    const auto ev = classify_det_sign(fx.pstar, cfg, seeds);
    c.expect(ev.verdict == Verdict::AmbiguousFound, "verdict " + to_string(ev.verdict));
    for (const auto* r : {&ev.plus, &ev.minus}) {
      if (!*r) continue;
      c.expect((*r)->ortho_residual <= 1e-9, "ortho_residual <= 1e-9");
      c.expect((*r)->max_zero_violation <= 1e-9, "max_zero_violation <= 1e-9");
    }
  });

  criterion(6, "Waters patterns n = 2..5, asserted sign only", 120.0, [&](Checker& c) {
    const SearchConfig cfg;
    for (std::size_t n = 2; n <= 5; ++n) {
      const auto w = waters_pattern(n);
      const int want = (n % 2 == 1) ? 1 : -1;
      c.expect(w.asserted_det_sign == want, "asserted sign for n=" + std::to_string(n));
      const auto same = search_realization(w.pattern, want > 0 ? DetTarget::Plus : DetTarget::Minus, cfg);
      const auto other = search_realization(w.pattern, want > 0 ? DetTarget::Minus : DetTarget::Plus, cfg);
      c.expect(same.has_value(), "n=" + std::to_string(n) + " asserted sign found");
      c.expect(!other.has_value(), "n=" + std::to_string(n) + " opposite sign absent");
    }
  });

  criterion(7, "census n = 2 matches the exhaustive oracle", 60.0, [&](Checker& c) {
    const auto report = census(2, census_defaults());
    c.expect(report.ambiguous == 0, "no ambiguous orbit");
    const auto oracle = exhaustive_2x2_oracle();
    const auto group = oracle::all_group_elements(2);
    std::size_t covered = 0;
    for (const auto& e : report.orbits) {
      const auto found = found_signs(e.evidence);
      std::set<std::uint64_t> seen;
      for (const auto& g : group) {
        const auto image = act(g, e.representative);
        if (!seen.insert(image.code()).second) continue;
        std::set<int> pushed;
        for (int d : found) pushed.insert(d * g.det_factor());
        const auto o = oracle.find(image);
        const std::set<int> want = o == oracle.end() ? std::set<int>{} : o->second;
        c.expect(pushed == want, "pattern " + image.str() + " disagrees with oracle");
      }
      covered += seen.size();
    }
    c.expect(covered == 81, "orbits cover all 81 patterns");
  });

  criterion(8, "census n = 3 has no ambiguous orbit", 600.0, [&](Checker& c) {
    const auto report = census(3, census_defaults());
    c.expect(report.ambiguous == 0, std::to_string(report.ambiguous) + " ambiguous orbits");
    std::size_t covered = 0;
    for (const auto& e : report.orbits) covered += e.orbit_size;
    c.expect(covered == 19683, "orbits cover all 3^9 patterns");
  });

  criterion(9, "property suites", 120.0, [&](Checker& c) {
    std::mt19937_64 rng(99);

    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
      const std::size_t n = 1 + static_cast<std::size_t>(trial % 8);
      const FloatMatrix base = random_signed_permutation(n, trial % 2 ? 1 : -1, rng);
      worst = std::max(worst, ortho_residual(cayley(random_skew(n, rng), base)));
    }
    c.expect(worst <= 1e-12, "Cayley residual " + std::to_string(worst));

    const double h = 1e-6;
    double worst_rel = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t n = 2 + static_cast<std::size_t>(trial % 6);
      const auto s = random_pattern(n, rng);
      const FloatMatrix base = cayley(random_skew(n, rng), random_signed_permutation(n, 1, rng));
      const SkewParams a = random_skew(n, rng);
      const auto g = chart_gradient(s, a, base, 0.2);
      double diff = 0.0, norm = 0.0;
      for (std::size_t k = 0; k < a.x.size(); ++k) {
        SkewParams up = a, dn = a;
        up.x[k] += h;
        dn.x[k] -= h;
        const double fd = (objective(s, cayley(up, base), 0.2) - objective(s, cayley(dn, base), 0.2)) / (2 * h);
        diff += (g[k] - fd) * (g[k] - fd);
        norm += fd * fd;
      }
      if (norm > 1e-12) worst_rel = std::max(worst_rel, std::sqrt(diff / norm));
    }
    c.expect(worst_rel <= 1e-4, "gradient relative error " + std::to_string(worst_rel));

    SearchConfig cfg;
    cfg.margin = 0.01;
    std::mt19937_64 seed_rng(5);
    const std::vector<FloatMatrix> seeds{perturb(to_float(fx.q1), 1e-2, seed_rng)};
    const auto ev = classify_det_sign(fx.pstar, cfg, seeds);
    c.expect(ev.plus.has_value(), "P* realization with det +1");
    if (ev.plus) {
      const auto g = GroupElement::negate_row(7, 0);
      const FloatMatrix moved = act(g, ev.plus->q);
      const SignPattern target = act(g, fx.pstar);
      c.expect(float_det_sign(moved) == -ev.plus->det_sign, "row negation flips det");
      c.expect(ortho_residual(moved) <= cfg.ortho_tol, "pushed residual");
      c.expect(max_zero_violation(target, moved) <= cfg.zero_tol, "pushed zero violation");
      c.expect(min_margin(target, moved) >= cfg.margin - cfg.zero_tol, "pushed margin");
    }

    int bad = 0;
    std::uniform_int_distribution<long> num(-6, 6), den(1, 7);
    for (int trial = 0; trial < 500; ++trial) {
      const std::size_t n = 1 + static_cast<std::size_t>(trial % 5);
      const auto g = GroupElement::random(n, rng);
      RatMatrix m(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = Rational(num(rng), den(rng));
      if (sign_pattern_of(act(g, m)) != act(g, sign_pattern_of(m))) ++bad;
    }
    c.expect(bad == 0, std::to_string(bad) + " equivariance failures");
  });

  std::printf("%s: %d criterion(s) failed\n", failed_criteria ? "FAIL" : "PASS", failed_criteria);
  return failed_criteria ? 1 : 0;
}
