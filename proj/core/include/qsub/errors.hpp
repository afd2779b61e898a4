#pragma once

#include <stdexcept>
#include <string>

namespace qsub {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An input lies outside the domain of the operation (non-positive beta, negative g, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The closed forms only exist for a subset of systems (e.g. resonant oscillators).
class UnsupportedConfiguration : public Error {
 public:
  using Error::Error;
};

/// g = omega/2 for the linear coupling: the soft normal mode has zero frequency.
class SingularConfiguration : public Error {
 public:
  using Error::Error;
};

/// The Fock cutoff cannot represent the requested state or dynamics.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, double min_feasible_beta_omega = 0.0)
      : Error(what), min_feasible_beta_omega_(min_feasible_beta_omega) {}

  /// Smallest beta*omega the configured cutoff can handle; 0 when not applicable.
  double min_feasible_beta_omega() const noexcept { return min_feasible_beta_omega_; }

 private:
  double min_feasible_beta_omega_;
};

/// A density matrix has an eigenvalue below the positivity tolerance, or a
/// relative entropy has unbounded support mismatch.
class PositivityError : public Error {
 public:
  using Error::Error;
};

}  // namespace qsub
