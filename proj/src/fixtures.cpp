#include "orthosign/fixtures.hpp"

#include "orthosign/exact_io.hpp"

namespace orthosign {

namespace detail {
extern const std::string_view kFixtureQ1;
extern const std::string_view kFixtureQ2;
extern const std::string_view kFixtureR3;
extern const std::string_view kFixtureS3;
extern const std::string_view kFixtureT3;
extern const std::string_view kFixturePstar;
}  // namespace detail

const std::vector<FixtureFile>& fixture_files() {
  static const std::vector<FixtureFile> files{
      {"q1", "q1.json", detail::kFixtureQ1},       {"q2", "q2.json", detail::kFixtureQ2},
      {"r3", "r3.json", detail::kFixtureR3},       {"s3", "s3.pat", detail::kFixtureS3},
      {"t3", "t3.pat", detail::kFixtureT3},        {"pstar", "pstar.pat", detail::kFixturePstar},
  };
  return files;
}

const FixtureSet& fixtures() {
  static const FixtureSet set{
      .q1 = parse_rat_matrix(detail::kFixtureQ1),
      .q2 = parse_rat_matrix(detail::kFixtureQ2),
      .r3 = parse_quad_matrix(detail::kFixtureR3),
      .s3 = SignPattern::parse(detail::kFixtureS3),
      .t3 = SignPattern::parse(detail::kFixtureT3),
      .pstar = SignPattern::parse(detail::kFixturePstar),
  };
  return set;
}

FixtureValue get_fixture(std::string_view name) {
  const auto& f = fixtures();
  if (name == "q1") return f.q1;
  if (name == "q2") return f.q2;
  if (name == "r3") return f.r3;
  if (name == "s3") return f.s3;
  if (name == "t3") return f.t3;
  if (name == "pstar") return f.pstar;
  throw UnknownFixture("unknown fixture '" + std::string(name) + "'");
}

}  // namespace orthosign
