#include "optplan/error.hpp"

#include <utility>

namespace optplan {

ParseError::ParseError(std::string message, std::size_t line, std::size_t column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + message),
      detail_(std::move(message)),
      line_(line),
      column_(column) {}

}  // namespace optplan
