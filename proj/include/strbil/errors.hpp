// Copyright (c) 2026 strbil contributors
// SPDX-License-Identifier: MIT

#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace strbil {

/// Broad failure category, used by the CLI to pick its exit code:
/// validation errors (malformed input, inconsistent dimensions) exit with 2,
/// numerical failures (singular solves, empty bases) exit with 3.
enum class ErrorKind { Validation, Numerical };

/// Base class of every error thrown by the library. Carries a stable
/// machine-readable code alongside the human-readable message.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, std::string code, const std::string& message)
      : std::runtime_error(message), kind_(kind), code_(std::move(code)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& code() const noexcept { return code_; }

private:
  ErrorKind kind_;
  std::string code_;
};

class ValidationError : public Error {
public:
  ValidationError(std::string code, const std::string& message)
      : Error(ErrorKind::Validation, std::move(code), message) {}
};

class NumericalError : public Error {
public:
  NumericalError(std::string code, const std::string& message)
      : Error(ErrorKind::Numerical, std::move(code), message) {}
};

/// A pivot fell below the rank tolerance: the system pencil (or a projected
/// pencil) is singular at the evaluation point.
class SingularMatrixError : public NumericalError {
public:
  explicit SingularMatrixError(const std::string& message)
      : NumericalError("singular_matrix", message) {}
};

/// Every candidate column of a basis fell below the drop tolerance.
class EmptyBasisError : public NumericalError {
public:
  explicit EmptyBasisError(const std::string& message)
      : NumericalError("empty_basis", message) {}
};

/// Realification was requested but the interpolation point multiset is not
/// closed under conjugation (or the system itself is not real).
class RealifyImpossibleError : public ValidationError {
public:
  explicit RealifyImpossibleError(const std::string& message)
      : ValidationError("realify_impossible", message) {}
};

/// A projection basis does not have full column rank.
class RankDeficientBasisError : public NumericalError {
public:
  explicit RankDeficientBasisError(const std::string& message)
      : NumericalError("rank_deficient_basis", message) {}
};

/// A Generic-template system was asked for a derivative order beyond the
/// order its closures declare.
class UnsupportedDerivativeError : public ValidationError {
public:
  explicit UnsupportedDerivativeError(const std::string& message)
      : ValidationError("unsupported_derivative", message) {}
};

/// Two trajectories with different time grids were combined.
class GridMismatchError : public ValidationError {
public:
  explicit GridMismatchError(const std::string& message)
      : ValidationError("grid_mismatch", message) {}
};

/// The delay of a TimeDelay system is not an integer multiple of dt.
class NonIntegerDelayRatioError : public ValidationError {
public:
  explicit NonIntegerDelayRatioError(const std::string& message)
      : ValidationError("non_integer_delay_ratio", message) {}
};

/// Dimension or argument preconditions violated.
class InvalidSizeError : public ValidationError {
public:
  explicit InvalidSizeError(const std::string& message)
      : ValidationError("invalid_size", message) {}
};

/// Unknown name passed to a lookup (input signal, model kind, ...).
class UnknownNameError : public ValidationError {
public:
  explicit UnknownNameError(const std::string& message)
      : ValidationError("unknown_name", message) {}
};

/// The time integrator produced a non-finite state or hit a singular step
/// matrix; the message reports the time reached.
class StepFailureError : public NumericalError {
public:
  explicit StepFailureError(const std::string& message)
      : NumericalError("step_failure", message) {}
};

/// File/parse problems on the CLI surface.
class IoError : public ValidationError {
public:
  explicit IoError(const std::string& message) : ValidationError("io", message) {}
};

} // namespace strbil
