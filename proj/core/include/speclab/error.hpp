#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace speclab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed potential expression. `position()` is a 0-based byte offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A mathematical precondition does not hold (negative potential, non-PSD input, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Requested size exceeds a fixed computational budget, or a sampling budget is too small.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// Numerical failure that cannot be reported as a partial result (e.g. exp overflow).
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace speclab
