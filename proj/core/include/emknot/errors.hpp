#pragma once

#include <stdexcept>
#include <string>

namespace emknot {

/// Input outside an operation's domain (bad index, out-of-wedge point, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed input document. `line()` is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, int line, const std::string& message)
      : std::runtime_error(format(source, line, message)), line_(line) {}
  int line() const { return line_; }

 private:
  static std::string format(const std::string& source, int line, const std::string& message) {
    if (line > 0) return source + ":" + std::to_string(line) + ": " + message;
    return source + ": " + message;
  }
  int line_;
};

}  // namespace emknot
