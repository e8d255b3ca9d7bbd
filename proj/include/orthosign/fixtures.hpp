#pragma once

#include "orthosign/exact.hpp"
#include "orthosign/sign_pattern.hpp"

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace orthosign {

/// The matrices and patterns of the sign-ambiguity construction, parsed
/// from the data files in fixtures/ (embedded at build time).
struct FixtureSet {
  RatMatrix q1;       // 7x7, denominator 8, det +1
  RatMatrix q2;       // 7x7, denominator 20014, det -1
  QuadMatrix r3;      // 3x3 realization of s3 over Q(sqrt 2)
  SignPattern s3;     // allows orthogonality
  SignPattern t3;     // columns 1 and 2 force a positive dot product
  SignPattern pstar;  // shared pattern of q1 and q2

  static WatersPattern waters(std::size_t n) { return waters_pattern(n); }
};

/// Parsed once, read-only afterwards.
const FixtureSet& fixtures();

using FixtureValue = std::variant<RatMatrix, QuadMatrix, SignPattern>;

/// Names: q1, q2, r3, s3, t3, pstar. Throws UnknownFixture.
FixtureValue get_fixture(std::string_view name);

struct FixtureFile {
  std::string name;      // catalog name
  std::string filename;  // e.g. "q1.json"
  std::string_view contents;
};

const std::vector<FixtureFile>& fixture_files();

}  // namespace orthosign
