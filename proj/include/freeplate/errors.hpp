#pragma once

#include <stdexcept>
#include <string>

namespace freeplate {

/// Argument outside the supported domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Argument beyond the range a numerical kernel can represent.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// An iterative or bracketing solver failed. `trace()` carries the
/// diagnostic history (scan values, residuals) for the caller to print.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, std::string trace)
      : std::runtime_error(what), trace_(std::move(trace)) {}

  const std::string& trace() const noexcept { return trace_; }

 private:
  std::string trace_;
};

/// Malformed user input (configuration files, expressions).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace freeplate
