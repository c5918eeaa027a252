#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace optplan {

/// A syntax error in N-Triples or query text, positioned at a 1-based line and column.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, std::size_t line, std::size_t column);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  /// The message without the position prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string detail_;
  std::size_t line_;
  std::size_t column_;
};

}  // namespace optplan
