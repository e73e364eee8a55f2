#pragma once

#include <stdexcept>
#include <string>

#include "gadi/types.hpp"

namespace gadi {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An input violated a documented precondition (not SPD, bad parameter, ...).
class ContractError : public Error {
 public:
  using Error::Error;
};

/// A scalar argument is outside the domain of the formula.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A quantity with a zero denominator was requested (e.g. RES with b = 0).
class UndefinedDenominatorError : public Error {
 public:
  using Error::Error;
};

/// A dense construction exceeded its size cap.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

/// Self-validation of a construction failed.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// A numerical kernel (factorization, eigensolver) failed.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// An inner linear solve failed to reach its tolerance. Carries the best
/// iterate found so callers can inspect or resume.
class InnerSolveError : public Error {
 public:
  InnerSolveError(const std::string& what, ComplexVector best_iterate, int iterations,
                  double relative_residual)
      : Error(what),
        best_iterate_(std::move(best_iterate)),
        iterations_(iterations),
        relative_residual_(relative_residual) {}

  const ComplexVector& best_iterate() const noexcept { return best_iterate_; }
  int iterations() const noexcept { return iterations_; }
  double relative_residual() const noexcept { return relative_residual_; }

 private:
  ComplexVector best_iterate_;
  int iterations_;
  double relative_residual_;
};

/// COCG hit a vanishing conjugate-orthogonal inner product.
class BreakdownError : public InnerSolveError {
 public:
  using InnerSolveError::InnerSolveError;
};

}  // namespace gadi
