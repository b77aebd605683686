#pragma once

#include <stdexcept>
#include <string>

namespace gl2 {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mismatched dimensions or malformed containers.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// Bad input from a caller: unknown fixture, incomplete jet, bad flag.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// A matrix that had to be inverted is (numerically) singular.
class SingularMatrixError : public Error {
 public:
  SingularMatrixError(const std::string& what, double condition)
      : Error(what), condition_(condition) {}
  double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

/// A torsion tensor is not in the delta-image of the requested subspace.
class NotInImageError : public Error {
 public:
  NotInImageError(const std::string& what, double residual_norm)
      : Error(what), residual_norm_(residual_norm) {}
  double residual_norm() const noexcept { return residual_norm_; }

 private:
  double residual_norm_;
};

/// recover_connection was asked for a connection on a structure with torsion.
class TorsionError : public NotInImageError {
 public:
  using NotInImageError::NotInImageError;
};

}  // namespace gl2
