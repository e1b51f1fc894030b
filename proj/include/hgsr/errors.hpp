#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hgsr {

/// Base of every error thrown by the library. The three direct subclasses map
/// onto the CLI exit-code classes (parse, validation, runtime).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `line()` is 1-based, 0 when no line applies.
class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : Error(source + (line > 0 ? ":" + std::to_string(line) : std::string{}) + ": " + what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Inputs that parse but violate an invariant or precondition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Value outside the domain of a function (e.g. cross-entropy target outside [0,1]).
class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// A call that the operation's contract excludes, such as an odd-order total variation.
class ContractViolation : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Failures that happen while computing on valid inputs.
class RuntimeFailure : public Error {
 public:
  using Error::Error;
};

class DivergenceError : public RuntimeFailure {
 public:
  DivergenceError(std::size_t iteration, const std::string& what)
      : RuntimeFailure("diverged at iteration " + std::to_string(iteration) + ": " + what),
        iteration_(iteration) {}
  std::size_t iteration() const noexcept { return iteration_; }

 private:
  std::size_t iteration_;
};

class OracleBudgetError : public RuntimeFailure {
 public:
  using RuntimeFailure::RuntimeFailure;
};

}  // namespace hgsr
