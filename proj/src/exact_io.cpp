#include "orthosign/exact_io.hpp"

#include "orthosign/errors.hpp"

#include <fstream>
#include <sstream>

namespace orthosign {
namespace {

using nlohmann::json;

struct Location {
  std::size_t line = 0;
  std::size_t column = 0;
};

Location locate_offset(std::string_view text, std::size_t offset) {
  Location loc{1, 1};
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++loc.line;
      loc.column = 1;
    } else {
      ++loc.column;
    }
  }
  return loc;
}

// Best-effort position of the first quoted occurrence of a string literal.
Location locate_literal(std::string_view text, const std::string& literal) {
  const auto pos = text.find("\"" + literal + "\"");
  if (pos == std::string_view::npos) return {};
  return locate_offset(text, pos + 1);
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // e.byte is one past the offending character.
    const auto loc = locate_offset(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError("malformed JSON: " + std::string(e.what()), loc.line, loc.column);
  }
}

std::size_t require_count(const json& doc, const char* key, std::string_view text) {
  if (!doc.contains(key)) throw ParseError(std::string("missing key '") + key + "'", 1, 1);
  const json& v = doc.at(key);
  if (!v.is_number_unsigned() || v.get<std::size_t>() == 0) {
    const auto loc = locate_literal(text, key);
    throw ParseError(std::string("'") + key + "' must be a positive integer", loc.line, loc.column);
  }
  return v.get<std::size_t>();
}

template <typename T, typename ParseEntry>
ExactMatrix<T> parse_matrix(std::string_view text, ParseEntry parse_entry) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw ParseError("matrix document must be a JSON object", 1, 1);
  const std::size_t rows = require_count(doc, "rows", text);
  const std::size_t cols = require_count(doc, "cols", text);
  if (!doc.contains("entries") || !doc.at("entries").is_array())
    throw ParseError("missing 'entries' array", 1, 1);
  const json& entries = doc.at("entries");
  const auto entries_loc = locate_literal(text, "entries");
  if (entries.size() != rows)
    throw ParseError("'entries' has " + std::to_string(entries.size()) + " rows, expected " +
                         std::to_string(rows),
                     entries_loc.line, entries_loc.column);

  ExactMatrix<T> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const json& row = entries.at(i);
    if (!row.is_array() || row.size() != cols)
      throw ParseError("row " + std::to_string(i + 1) + " must be an array of " +
                           std::to_string(cols) + " strings",
                       entries_loc.line, entries_loc.column);
    for (std::size_t j = 0; j < cols; ++j) {
      const json& cell = row.at(j);
      if (!cell.is_string()) {
        throw ParseError("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                             ") must be a string",
                         entries_loc.line, entries_loc.column);
      }
      const auto& s = cell.get_ref<const std::string&>();
      try {
        m(i, j) = parse_entry(s);
      } catch (const ParseError& e) {
        const auto loc = locate_literal(text, s);
        throw ParseError("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                             "): " + e.what(),
                         loc.line, loc.column);
      }
    }
  }
  return m;
}

}  // namespace

RatMatrix parse_rat_matrix(std::string_view text) {
  return parse_matrix<Rational>(text, [](const std::string& s) { return Rational::parse(s); });
}

QuadMatrix parse_quad_matrix(std::string_view text) {
  return parse_matrix<QuadRational>(text,
                                    [](const std::string& s) { return QuadRational::parse(s); });
}

std::variant<RatMatrix, QuadMatrix> parse_exact_matrix(std::string_view text) {
  QuadMatrix q = parse_quad_matrix(text);
  for (const auto& e : q.entries())
    if (!e.sqrt2_part().is_zero()) return q;
  RatMatrix r(q.rows(), q.cols());
  for (std::size_t i = 0; i < q.rows(); ++i)
    for (std::size_t j = 0; j < q.cols(); ++j) r(i, j) = q(i, j).rational_part();
  return r;
}

namespace {
template <typename T>
json matrix_json(const ExactMatrix<T>& m) {
  json entries = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
    entries.push_back(std::move(row));
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}
}  // namespace

json to_json(const RatMatrix& m) { return matrix_json(m); }
json to_json(const QuadMatrix& m) { return matrix_json(m); }

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace orthosign
