#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace polycert {

/// Invalid caller input: bad dimensions, out-of-range parameters, malformed
/// directions.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Syntax or validation failure while reading an expression or problem file.
/// Line and column are 1-based; 0 means "not applicable".
class ParseError : public InputError {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : InputError(format(message, line, column)),
        detail_(message),
        line_(line),
        column_(column) {}

  const std::string& detail() const noexcept { return detail_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& message, std::size_t line,
                            std::size_t column) {
    std::string out;
    if (line > 0) {
      out += "line " + std::to_string(line);
      if (column > 0) out += ", column " + std::to_string(column);
      out += ": ";
    }
    return out + message;
  }

  std::string detail_;
  std::size_t line_;
  std::size_t column_;
};

/// A configured resource cap (e.g. expansion term count) was exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called outside its documented precondition.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace polycert
