#pragma once

#include "orthosign/realize.hpp"
#include "orthosign/sign_pattern.hpp"

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace orthosign {

/// Search outcome for both determinant signs. Anything other than
/// AmbiguousFound is absence of evidence, not a proof.
enum class Verdict { AmbiguousFound, OnlyPlusFound, OnlyMinusFound, NoneFound };

std::string to_string(Verdict v);

struct DetSignEvidence {
  SignPattern pattern;
  std::optional<RealizationResult> plus{};
  std::optional<RealizationResult> minus{};
  Verdict verdict = Verdict::NoneFound;
  bool necessary_pass = true;
  std::size_t seeds_used = 0;
  // Budget the searches ran under.
  std::size_t restarts = 0;
  std::size_t max_iters = 0;
  double margin = 0.0;
};

Verdict verdict_of(bool plus_found, bool minus_found);

/// Polishes each seed with refine_from, then runs search_realization for
/// whichever determinant sign is still missing.
DetSignEvidence classify_det_sign(const SignPattern& s, const SearchConfig& cfg,
                                  std::span<const FloatMatrix> seeds = {});

/// Every realizable 2x2 pattern with its achievable determinant signs,
/// from the closed form [[c,-s],[s,c]] (det +1) and [[c,s],[s,-c]]
/// (det -1) over all sign choices of (c, s) except c = s = 0.
std::map<SignPattern, std::set<int>> exhaustive_2x2_oracle();

struct CensusEntry {
  SignPattern representative;
  std::size_t orbit_size = 0;
  bool pruned = false;  // rejected by necessary_check, never searched
  DetSignEvidence evidence;
};

struct CensusReport {
  std::size_t order = 0;
  std::uint64_t raw_patterns = 0;
  std::size_t orbits_examined = 0;
  std::size_t pruned = 0;
  std::size_t searched = 0;
  std::size_t ambiguous = 0;
  std::size_t restarts = 0;
  std::size_t max_iters = 0;
  double margin = 0.0;
  double wall_time_seconds = 0.0;
  std::vector<CensusEntry> orbits;  // ascending by representative
};

/// Per-orbit budget used by the census: 20 restarts x 500 iterations.
SearchConfig census_defaults();

/// Enumerates all n x n patterns, one representative per symmetry orbit,
/// prunes by necessary_check and classifies the survivors. Order 4 is
/// only accepted with allow_long_run.
CensusReport census(std::size_t n, const SearchConfig& cfg, bool allow_long_run = false);

}  // namespace orthosign
