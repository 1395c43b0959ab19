#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pst {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An input violates an operation's precondition (bad index, bad size,
/// a certificate that does not certify anything).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Malformed text input. `line()` is 1-based; 0 when not line-specific.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// The Jacobi eigensolver ran out of sweeps.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  /// Off-diagonal Frobenius mass left when the solver gave up.
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Some spectral phase on the sender's support is not an integer
/// multiple of pi within tolerance.
class ClassificationError : public Error {
 public:
  ClassificationError(const std::string& what, std::size_t worst_index,
                      double worst_deviation)
      : Error(what), worst_index_(worst_index), worst_deviation_(worst_deviation) {}
  /// 0-based eigenvalue index of the worst offender.
  std::size_t worst_index() const noexcept { return worst_index_; }
  double worst_deviation() const noexcept { return worst_deviation_; }

 private:
  std::size_t worst_index_;
  double worst_deviation_;
};

}  // namespace pst
