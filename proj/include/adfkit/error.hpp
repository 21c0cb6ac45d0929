#pragma once

#include <stdexcept>
#include <string>

namespace adfkit {

/// Failure category; doubles as the CLI exit status.
enum class ErrorKind : int {
  input = 1,       // malformed or unreadable input
  constraint = 2,  // well-formed input that violates a requirement (quota shortfall, failed check)
  internal = 3,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error(ErrorKind::input, what) {}
};

class ConstraintError : public Error {
 public:
  explicit ConstraintError(const std::string& what) : Error(ErrorKind::constraint, what) {}
};

/// Input error that carries the 1-based line it was found on.
class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace adfkit
