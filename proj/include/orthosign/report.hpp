#pragma once

#include "orthosign/hunt.hpp"
#include "orthosign/realize.hpp"
#include "orthosign/sign_pattern.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace orthosign {

// JSON report schemas are documented in docs/formats.md.

nlohmann::json float_matrix_json(const FloatMatrix& m);
/// Parses a JSON array of equal-length numeric arrays. Throws ParseError.
FloatMatrix parse_float_matrix(std::string_view json_text);

nlohmann::json to_json(const SignPattern& s);
nlohmann::json to_json(const NecessaryReport& r);
nlohmann::json to_json(const RealizationResult& r);
nlohmann::json to_json(const std::optional<RealizationResult>& r);
nlohmann::json to_json(const DetSignEvidence& e);
/// Wall time is left out so that identical runs give identical reports.
nlohmann::json to_json(const CensusReport& c);

/// Two-space indented dump with a trailing newline.
std::string render(const nlohmann::json& j);

// Human-readable renderings for the CLI.
std::string render_text(const NecessaryReport& r);
std::string render_text(const RealizationResult& r);
std::string render_text(const DetSignEvidence& e);
std::string render_text(const CensusReport& c);

}  // namespace orthosign
