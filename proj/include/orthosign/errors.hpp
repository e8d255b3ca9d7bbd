#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace orthosign {

/// Operands have incompatible shapes.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed matrix or pattern text. Line and column are 1-based; 0 means
/// the location is unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : std::runtime_error(what), line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class UnsupportedOrder : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input is singular or otherwise outside an operation's domain.
class DegenerateInput : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class UnknownFixture : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

}  // namespace orthosign
