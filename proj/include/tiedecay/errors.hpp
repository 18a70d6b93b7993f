#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tiedecay {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mismatched dimensions, malformed inputs, broken type invariants.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// A configuration that cannot be satisfied (e.g. a connected graph with p = 0).
class InfeasibleConfigError : public Error {
 public:
  using Error::Error;
};

/// A bounded retry loop ran out of attempts.
class ExhaustionError : public Error {
 public:
  using Error::Error;
};

class EmptyInputError : public Error {
 public:
  using Error::Error;
};

class UndefinedCorrelationError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace tiedecay
