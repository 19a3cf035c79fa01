#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stokeskit {

/// A precondition on user-supplied data was violated (bad parameters, wrong shape).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed operator or scalar text. `position` is a 0-based character offset.
class ParseError : public DomainError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : DomainError(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Numerical or algebraic failure during a computation.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A linear system that should have a unique solution was rank deficient or inconsistent.
class SingularSystemError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace stokeskit
