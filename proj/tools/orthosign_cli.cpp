// orthosign: verify, analyse and search orthogonal matrices with a
// prescribed sign pattern.
//
// Exit codes: 0 affirmative result, 1 negative finding, 2 usage or input
// error.

#include "orthosign/exact_io.hpp"
#include "orthosign/fixtures.hpp"
#include "orthosign/hunt.hpp"
#include "orthosign/realize.hpp"
#include "orthosign/report.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace orthosign;
using nlohmann::json;

namespace {

constexpr int kAffirmative = 0;
constexpr int kNegative = 1;
constexpr int kInputError = 2;

/// A ParseError tagged with the file it came from.
class FileError : public std::runtime_error {
 public:
  FileError(std::string path, const ParseError& e)
      : std::runtime_error(e.what()), path_(std::move(path)), line_(e.line()), column_(e.column()) {}

  std::string location() const {
    std::string loc = path_;
    if (line_ > 0) loc += ":" + std::to_string(line_) + ":" + std::to_string(column_);
    return loc;
  }

 private:
  std::string path_;
  std::size_t line_;
  std::size_t column_;
};

template <typename Parse>
auto parse_file(const std::string& path, Parse parse) {
  const std::string text = [&] {
    try {
      return read_text_file(path);
    } catch (const ParseError& e) {
      throw FileError(path, e);
    }
  }();
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw FileError(path, e);
  }
}

struct SearchFlags {
  std::uint64_t seed = 0;
  std::size_t restarts = 0;
  std::size_t max_iters = 0;
  double margin = 0;
  double zero_tol = 0;
  double ortho_tol = 0;
  std::string det = "any";
  std::int64_t denom_bound = 0;  // 0 = no certification
  double time_budget = 0;        // seconds, 0 = unlimited

  explicit SearchFlags(const SearchConfig& d)
      : restarts(d.restarts),
        max_iters(d.max_iters),
        margin(d.margin),
        zero_tol(d.zero_tol),
        ortho_tol(d.ortho_tol) {}

  void add_to(CLI::App* cmd, bool with_det) {
    cmd->add_option("--seed", seed, "RNG seed")->capture_default_str();
    cmd->add_option("--restarts", restarts, "Random restarts per search")->capture_default_str();
    cmd->add_option("--max-iters", max_iters, "Descent iterations per restart")
        ->capture_default_str();
    cmd->add_option("--margin", margin, "Required magnitude of signed entries")
        ->capture_default_str();
    cmd->add_option("--zero-tol", zero_tol, "Tolerance for zero-pattern entries")
        ->capture_default_str();
    cmd->add_option("--ortho-tol", ortho_tol, "Tolerance on max|Q^T Q - I|")->capture_default_str();
    if (with_det)
      cmd->add_option("--det", det, "Target determinant: +1, -1 or any")->capture_default_str();
    cmd->add_option("--denom-bound", denom_bound,
                    "Certify finds with denominators up to this bound (0 = off)")
        ->capture_default_str();
    cmd->add_option("--time-budget", time_budget, "Wall-clock budget in seconds (0 = unlimited)")
        ->capture_default_str();
  }

  SearchConfig config(SearchConfig cfg) const {
    cfg.rng_seed = seed;
    cfg.restarts = restarts;
    cfg.max_iters = max_iters;
    cfg.margin = margin;
    cfg.zero_tol = zero_tol;
    cfg.ortho_tol = ortho_tol;
    if (denom_bound < 0) throw CLI::ValidationError("--denom-bound", "must be nonnegative");
    if (denom_bound > 0) cfg.denom_bound = denom_bound;
    if (time_budget < 0) throw CLI::ValidationError("--time-budget", "must be nonnegative");
    cfg.time_budget = std::chrono::milliseconds(static_cast<long long>(time_budget * 1000.0));
    try {
      cfg.validate();
    } catch (const std::invalid_argument& e) {
      throw CLI::ValidationError("search options", e.what());
    }
    return cfg;
  }

  DetTarget target() const {
    auto t = parse_det_target(det);
    if (!t) throw CLI::ValidationError("--det", "expected +1, -1 or any, got '" + det + "'");
    return *t;
  }
};

struct SeedFlags {
  std::vector<std::string> files;
  double noise = 0.0;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--seeds", files, "Seed matrices (exact or float JSON), comma separated")
        ->delimiter(',');
    cmd->add_option("--seed-noise", noise, "Uniform noise added to seeds before polishing")
        ->capture_default_str();
  }

  std::vector<FloatMatrix> load(std::uint64_t rng_seed) const {
    if (noise < 0) throw CLI::ValidationError("--seed-noise", "must be nonnegative");
    std::vector<FloatMatrix> out;
    std::mt19937_64 rng(rng_seed);
    for (const auto& f : files) {
      const FloatMatrix m = parse_file(f, [](const std::string& text) {
        try {
          return std::visit([](const auto& e) { return to_float(e); }, parse_exact_matrix(text));
        } catch (const ParseError&) {
          return parse_float_matrix(text);
        }
      });
      out.push_back(noise > 0 ? perturb(m, noise, rng) : m);
    }
    return out;
  }
};

SignPattern load_pattern(const std::string& path) {
  return parse_file(path, [](const std::string& text) { return SignPattern::parse(text); });
}

// ---------------------------------------------------------------------------

template <typename M>
int verify_matrix(const M& m, const std::string& field, bool as_json) {
  json out{{"field", field}, {"rows", m.rows()}, {"cols", m.cols()}};
  const bool square = m.is_square();
  const bool ortho = square && is_orthogonal(m);
  out["orthogonal"] = ortho;
  if (square) {
    const auto d = det(m);
    const auto pattern = sign_pattern_of(m);
    out["det"] = d.str();
    out["det_sign"] = d.sign();
    out["pattern"] = to_json(pattern);
    out["necessary"] = to_json(necessary_check(pattern));
    if (as_json) {
      std::cout << render(out);
    } else {
      std::cout << "field: " << field << "\n"
                << "orthogonal: " << (ortho ? "true" : "false") << "\n"
                << "det: " << d.str() << "\n"
                << "det_sign: " << (d.sign() > 0 ? "+1" : (d.sign() < 0 ? "-1" : "0")) << "\n"
                << "pattern:\n"
                << pattern.str();
    }
  } else if (as_json) {
    std::cout << render(out);
  } else {
    std::cout << "field: " << field << "\northogonal: false (matrix is " << m.rows() << "x"
              << m.cols() << ")\n";
  }
  return ortho ? kAffirmative : kNegative;
}

int run_verify(const std::string& path, bool as_json) {
  const auto parsed =
      parse_file(path, [](const std::string& text) { return parse_exact_matrix(text); });
  if (const auto* r = std::get_if<RatMatrix>(&parsed)) return verify_matrix(*r, "Q", as_json);
  return verify_matrix(std::get<QuadMatrix>(parsed), "Q(sqrt2)", as_json);
}

int run_pattern(const std::string& path, bool as_json) {
  const SignPattern s = load_pattern(path);
  const auto report = necessary_check(s);
  if (as_json) {
    json out{{"pattern", to_json(s)}, {"necessary", to_json(report)}};
    if (s.order() <= kMaxCanonicalOrder) out["canonical_form"] = to_json(canonical_form(s));
    std::cout << render(out);
  } else {
    std::cout << s.str() << render_text(report);
    if (s.order() <= kMaxCanonicalOrder) std::cout << "canonical form:\n" << canonical_form(s).str();
  }
  return report.pass ? kAffirmative : kNegative;
}

int run_realize(const std::string& path, const SearchConfig& cfg, DetTarget target,
                const std::vector<FloatMatrix>& seeds, bool as_json) {
  const SignPattern s = load_pattern(path);
  std::optional<RealizationResult> res;
  for (const auto& seed : seeds) {
    res = refine_from(seed, s, target, cfg);
    if (res) break;
  }
  if (!res) res = search_realization(s, target, cfg);
  if (as_json) {
    std::cout << render(to_json(res));
  } else if (res) {
    std::cout << "found\n" << render_text(*res);
  } else {
    std::cout << "none found (target det " << to_string(target) << ", margin " << cfg.margin
              << ", " << cfg.restarts << " restarts)\n";
  }
  return res ? kAffirmative : kNegative;
}

int run_hunt(const std::string& path, const SearchConfig& cfg, const std::vector<FloatMatrix>& seeds,
             bool as_json) {
  const SignPattern s = load_pattern(path);
  const auto ev = classify_det_sign(s, cfg, seeds);
  std::cout << (as_json ? render(to_json(ev)) : render_text(ev));
  return ev.verdict == Verdict::AmbiguousFound ? kAffirmative : kNegative;
}

int run_census(std::size_t order, bool long_run, const SearchConfig& cfg, bool as_json) {
  const auto report = census(order, cfg, long_run);
  std::cout << (as_json ? render(to_json(report)) : render_text(report));
  if (report.ambiguous > 0 && order <= 3) {
    std::cerr << "error: census at order " << order << " found " << report.ambiguous
              << " determinant-sign ambiguous pattern(s); this contradicts the known "
                 "uniqueness for orders <= 4 and indicates a bug\n";
    return kNegative;
  }
  return kAffirmative;
}

int run_fixtures(const std::string& out_dir) {
  fs::create_directories(out_dir);
  for (const auto& f : fixture_files()) {
    const fs::path p = fs::path(out_dir) / f.filename;
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + p.string() + "'");
    out << f.contents;
    std::cout << p.string() << "\n";
  }
  return kAffirmative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orthogonal matrices with prescribed sign patterns"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "Emit JSON reports");

  std::string input;

  auto* verify = app.add_subcommand("verify", "Exact orthogonality, determinant and sign pattern");
  verify->add_option("matrix", input, "Exact matrix JSON file")->required();
  verify->add_flag("--json", as_json, "Emit JSON");

  auto* pattern = app.add_subcommand("pattern", "Combinatorial necessary check for a sign pattern");
  pattern->add_option("pattern", input, "Pattern file (+/-/0 grid)")->required();
  pattern->add_flag("--json", as_json, "Emit JSON");

  const SearchConfig search_default;
  const SearchConfig census_default = census_defaults();

  auto* realize = app.add_subcommand("realize", "Search for an orthogonal realization");
  realize->add_option("pattern", input, "Pattern file")->required();
  realize->add_flag("--json", as_json, "Emit JSON");
  SearchFlags realize_flags(search_default);
  realize_flags.add_to(realize, true);
  SeedFlags realize_seeds;
  realize_seeds.add_to(realize);

  auto* hunt = app.add_subcommand("hunt", "Look for realizations of both determinant signs");
  hunt->add_option("pattern", input, "Pattern file")->required();
  hunt->add_flag("--json", as_json, "Emit JSON");
  SearchFlags hunt_flags(search_default);
  hunt_flags.add_to(hunt, true);  // --det is accepted for symmetry; both signs are searched
  SeedFlags hunt_seeds;
  hunt_seeds.add_to(hunt);

  auto* census_cmd = app.add_subcommand("census", "Classify every pattern orbit of a small order");
  std::size_t order = 0;
  bool long_run = false;
  census_cmd->add_option("--order", order, "Pattern order (1..3, 4 with --long-run)")->required();
  census_cmd->add_flag("--long-run", long_run, "Allow the order-4 census");
  census_cmd->add_flag("--json", as_json, "Emit JSON");
  SearchFlags census_flags(census_default);
  census_flags.add_to(census_cmd, false);

  auto* fixtures_cmd = app.add_subcommand("fixtures", "Write the bundled fixture files");
  std::string out_dir = "fixtures";
  fixtures_cmd->add_option("--out", out_dir, "Output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*verify) return run_verify(input, as_json);
    if (*pattern) return run_pattern(input, as_json);
    if (*realize) {
      const auto cfg = realize_flags.config(search_default);
      const auto target = realize_flags.target();
      return run_realize(input, cfg, target, realize_seeds.load(cfg.rng_seed), as_json);
    }
    if (*hunt) {
      const auto cfg = hunt_flags.config(search_default);
      hunt_flags.target();
      return run_hunt(input, cfg, hunt_seeds.load(cfg.rng_seed), as_json);
    }
    if (*census_cmd) return run_census(order, long_run, census_flags.config(census_default), as_json);
    if (*fixtures_cmd) return run_fixtures(out_dir);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const FileError& e) {
    std::cerr << "error: " << e.location() << ": " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
