#include "orthosign/report.hpp"

#include "orthosign/exact_io.hpp"

#include <cstdio>
#include <sstream>

namespace orthosign {

using nlohmann::json;

namespace {

std::string fmt_double(double v, const char* spec = "%.3e") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string failure_kind(NecessaryFailure::Kind k) {
  switch (k) {
    case NecessaryFailure::Kind::RowPair: return "row";
    case NecessaryFailure::Kind::ColPair: return "col";
    case NecessaryFailure::Kind::ZeroRow: return "zero_row";
    case NecessaryFailure::Kind::ZeroCol: return "zero_col";
  }
  return {};
}

std::string found_summary(const std::optional<RealizationResult>& r) {
  if (!r) return "-";
  return "found (ortho " + fmt_double(r->ortho_residual, "%.1e") + ", margin " +
         fmt_double(r->min_margin, "%.3f") + (r->certificate ? ", certified" : "") + ")";
}

}  // namespace

json float_matrix_json(const FloatMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

FloatMatrix parse_float_matrix(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_array() || doc.empty() || !doc.front().is_array())
    throw ParseError("float matrix must be a non-empty array of arrays");
  const auto rows = static_cast<Eigen::Index>(doc.size());
  const auto cols = static_cast<Eigen::Index>(doc.front().size());
  if (cols == 0) throw ParseError("float matrix rows must be non-empty");
  FloatMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = doc.at(static_cast<std::size_t>(i));
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw ParseError("float matrix row " + std::to_string(i + 1) + " has the wrong length");
    for (Eigen::Index j = 0; j < cols; ++j) {
      const json& v = row.at(static_cast<std::size_t>(j));
      if (!v.is_number()) throw ParseError("float matrix entries must be numbers");
      m(i, j) = v.get<double>();
      if (!std::isfinite(m(i, j))) throw ParseError("float matrix entries must be finite");
    }
  }
  return m;
}

json to_json(const SignPattern& s) { return s.row_strings(); }

json to_json(const NecessaryReport& r) {
  json failures = json::array();
  for (const auto& f : r.failures)
    failures.push_back({{"kind", failure_kind(f.kind)}, {"i", f.i + 1}, {"j", f.j + 1}});
  return {{"pass", r.pass}, {"failures", std::move(failures)}};
}

json to_json(const RealizationResult& r) {
  return {{"found", true},
          {"det_sign", r.det_sign},
          {"objective_value", r.objective_value},
          {"ortho_residual", r.ortho_residual},
          {"min_margin", r.min_margin},
          {"max_zero_violation", r.max_zero_violation},
          {"restart", r.restart},
          {"iterations", r.iterations},
          {"Q", float_matrix_json(r.q)},
          {"certificate", r.certificate ? to_json(*r.certificate) : json(nullptr)}};
}

json to_json(const std::optional<RealizationResult>& r) {
  if (!r) return {{"found", false}};
  return to_json(*r);
}

json to_json(const DetSignEvidence& e) {
  return {{"pattern", to_json(e.pattern)},
          {"necessary_pass", e.necessary_pass},
          {"verdict", to_string(e.verdict)},
          {"plus", to_json(e.plus)},
          {"minus", to_json(e.minus)},
          {"budget",
           {{"restarts", e.restarts},
            {"max_iters", e.max_iters},
            {"margin", e.margin},
            {"seeds", e.seeds_used}}}};
}

json to_json(const CensusReport& c) {
  json orbits = json::array();
  for (const auto& o : c.orbits) {
    orbits.push_back({{"representative", to_json(o.representative)},
                      {"orbit_size", o.orbit_size},
                      {"pruned", o.pruned},
                      {"verdict", to_string(o.evidence.verdict)},
                      {"plus", to_json(o.evidence.plus)},
                      {"minus", to_json(o.evidence.minus)}});
  }
  return {{"order", c.order},
          {"raw_patterns", c.raw_patterns},
          {"orbits_examined", c.orbits_examined},
          {"pruned", c.pruned},
          {"searched", c.searched},
          {"ambiguous", c.ambiguous},
          {"budget", {{"restarts", c.restarts}, {"max_iters", c.max_iters}, {"margin", c.margin}}},
          {"orbits", std::move(orbits)}};
}

std::string render(const json& j) { return j.dump(2) + "\n"; }

std::string render_text(const NecessaryReport& r) {
  std::ostringstream out;
  out << "necessary check: " << (r.pass ? "pass" : "FAIL") << "\n";
  for (const auto& f : r.failures) out << "  " << describe(f) << "\n";
  return out.str();
}

std::string render_text(const RealizationResult& r) {
  std::ostringstream out;
  out << "det_sign: " << (r.det_sign > 0 ? "+1" : "-1") << "\n"
      << "objective: " << fmt_double(r.objective_value) << "\n"
      << "ortho_residual: " << fmt_double(r.ortho_residual) << "\n"
      << "min_margin: " << fmt_double(r.min_margin, "%.6f") << "\n"
      << "max_zero_violation: " << fmt_double(r.max_zero_violation) << "\n"
      << "restart: " << r.restart << ", iterations: " << r.iterations << "\n"
      << "Q:\n";
  for (Eigen::Index i = 0; i < r.q.rows(); ++i) {
    out << " ";
    for (Eigen::Index j = 0; j < r.q.cols(); ++j) out << " " << fmt_double(r.q(i, j), "%10.6f");
    out << "\n";
  }
  if (r.certificate) {
    out << "certificate (exact):\n";
    for (std::size_t i = 0; i < r.certificate->rows(); ++i) {
      out << " ";
      for (std::size_t j = 0; j < r.certificate->cols(); ++j)
        out << " " << (*r.certificate)(i, j).str();
      out << "\n";
    }
  }
  return out.str();
}

std::string render_text(const DetSignEvidence& e) {
  std::ostringstream out;
  out << "pattern:\n" << e.pattern.str();
  out << "verdict: " << to_string(e.verdict) << "\n";
  if (!e.necessary_pass) out << "  (rejected by necessary check)\n";
  out << "det +1: " << found_summary(e.plus) << "\n";
  out << "det -1: " << found_summary(e.minus) << "\n";
  out << "budget: " << e.restarts << " restarts x " << e.max_iters << " iterations, margin "
      << e.margin << ", " << e.seeds_used << " seed(s)\n";
  return out.str();
}

std::string render_text(const CensusReport& c) {
  std::ostringstream out;
  out << "order " << c.order << ": " << c.raw_patterns << " patterns, " << c.orbits_examined
      << " orbits (" << c.pruned << " pruned, " << c.searched << " searched), " << c.ambiguous
      << " ambiguous\n";
  out << "budget per orbit and sign: " << c.restarts << " restarts x " << c.max_iters
      << " iterations, margin " << c.margin << "\n";
  for (const auto& o : c.orbits) {
    const auto rows = o.representative.row_strings();
    std::string flat;
    for (const auto& r : rows) flat += (flat.empty() ? "" : "/") + r;
    out << "  " << flat << "  size " << o.orbit_size << "  "
        << (o.pruned ? std::string("pruned") : to_string(o.evidence.verdict));
    if (!o.pruned) {
      if (o.evidence.plus) out << "  +1 ortho " << fmt_double(o.evidence.plus->ortho_residual, "%.1e");
      if (o.evidence.minus) out << "  -1 ortho " << fmt_double(o.evidence.minus->ortho_residual, "%.1e");
    }
    out << "\n";
  }
  out << "wall time: " << fmt_double(c.wall_time_seconds, "%.2f") << " s\n";
  return out.str();
}

}  // namespace orthosign
