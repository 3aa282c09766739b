#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bugfix {

/// Parse failure in Bugfix spec text, tree files or pattern text.
/// Line and column are 1-based and point inside the input.
class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(std::size_t line, std::size_t col, const std::string& message)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + message),
        line_(line),
        col_(col),
        message_(message) {}

  std::size_t line() const { return line_; }
  std::size_t col() const { return col_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t line_;
  std::size_t col_;
  std::string message_;
};

}  // namespace bugfix
