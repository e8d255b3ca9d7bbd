#include "orthosign/hunt.hpp"

#include <chrono>

namespace orthosign {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::AmbiguousFound: return "AmbiguousFound";
    case Verdict::OnlyPlusFound: return "OnlyPlusFound";
    case Verdict::OnlyMinusFound: return "OnlyMinusFound";
    case Verdict::NoneFound: return "NoneFound";
  }
  return {};
}

Verdict verdict_of(bool plus_found, bool minus_found) {
  if (plus_found && minus_found) return Verdict::AmbiguousFound;
  if (plus_found) return Verdict::OnlyPlusFound;
  if (minus_found) return Verdict::OnlyMinusFound;
  return Verdict::NoneFound;
}

DetSignEvidence classify_det_sign(const SignPattern& s, const SearchConfig& cfg,
                                  std::span<const FloatMatrix> seeds) {
  cfg.validate();
  DetSignEvidence ev{.pattern = s};
  ev.restarts = cfg.restarts;
  ev.max_iters = cfg.max_iters;
  ev.margin = cfg.margin;
  ev.seeds_used = seeds.size();
  ev.necessary_pass = necessary_check(s).pass;
  if (!ev.necessary_pass) return ev;

  for (const auto& seed : seeds) {
    if (ev.plus && ev.minus) break;
    auto res = refine_from(seed, s, DetTarget::Any, cfg);
    if (!res) continue;
    auto& slot = res->det_sign > 0 ? ev.plus : ev.minus;
    if (!slot) slot = std::move(res);
  }
  if (!ev.plus) ev.plus = search_realization(s, DetTarget::Plus, cfg);
  if (!ev.minus) ev.minus = search_realization(s, DetTarget::Minus, cfg);
  ev.verdict = verdict_of(ev.plus.has_value(), ev.minus.has_value());
  return ev;
}

std::map<SignPattern, std::set<int>> exhaustive_2x2_oracle() {
  std::map<SignPattern, std::set<int>> out;
  for (int c = -1; c <= 1; ++c)
    for (int s = -1; s <= 1; ++s) {
      if (c == 0 && s == 0) continue;
      const Sign C = sign_of_int(c);
      const Sign S = sign_of_int(s);
      const Sign mS = sign_of_int(-s);
      const Sign mC = sign_of_int(-c);
      out[SignPattern(2, {C, mS, S, C})].insert(1);
      out[SignPattern(2, {C, S, S, mC})].insert(-1);
    }
  return out;
}

SearchConfig census_defaults() {
  SearchConfig cfg;
  cfg.restarts = 20;
  cfg.max_iters = 500;
  return cfg;
}

CensusReport census(std::size_t n, const SearchConfig& cfg, bool allow_long_run) {
  if (n == 0 || n > 4) throw UnsupportedOrder("census supports orders 1..4, got " + std::to_string(n));
  if (n == 4 && !allow_long_run)
    throw UnsupportedOrder("order 4 census is a long run and must be requested explicitly");
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();

  CensusReport report;
  report.order = n;
  report.restarts = cfg.restarts;
  report.max_iters = cfg.max_iters;
  report.margin = cfg.margin;
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < n * n; ++k) total *= 3;
  report.raw_patterns = total;

  // Scanning codes in ascending order, the first unvisited code of each
  // orbit is its minimum, i.e. the canonical form.
  std::vector<bool> visited(total, false);
  for (std::uint64_t code = 0; code < total; ++code) {
    if (visited[code]) continue;
    const SignPattern rep = SignPattern::from_code(n, code);
    const auto orbit = orbit_codes(rep);
    for (auto c : orbit) visited[c] = true;

    CensusEntry entry{.representative = rep,
                      .orbit_size = orbit.size(),
                      .pruned = false,
                      .evidence = classify_det_sign(rep, cfg)};
    entry.pruned = !entry.evidence.necessary_pass;
    if (entry.pruned) {
      ++report.pruned;
    } else {
      ++report.searched;
    }
    if (entry.evidence.verdict == Verdict::AmbiguousFound) ++report.ambiguous;
    report.orbits.push_back(std::move(entry));
  }
  report.orbits_examined = report.orbits.size();
  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace orthosign
