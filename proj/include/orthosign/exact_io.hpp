#pragma once

#include "orthosign/exact.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

namespace orthosign {

// Exact matrix file format:
//   {"rows": n, "cols": m, "entries": [["5/8", "3/8", ...], ...]}
// Rational entries are "p" or "p/q"; Q(sqrt 2) entries are "p/q+r/s*sqrt2"
// with either term omissible.

RatMatrix parse_rat_matrix(std::string_view json_text);
QuadMatrix parse_quad_matrix(std::string_view json_text);

/// Parses as a RatMatrix unless some entry carries a sqrt2 term.
std::variant<RatMatrix, QuadMatrix> parse_exact_matrix(std::string_view json_text);

nlohmann::json to_json(const RatMatrix& m);
nlohmann::json to_json(const QuadMatrix& m);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace orthosign
