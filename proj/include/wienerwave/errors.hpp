#pragma once

#include <stdexcept>
#include <string>

namespace ww {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Iterative or adaptive procedure failed to reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Kernel query too close to the light cone for quadrature evaluation.
class ConeBandError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Exponent tuple rejected by an admissibility predicate.
class AdmissibilityError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Spectral evolution pushed mass onto the edge of the radial grid.
class AliasingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Picard iteration failed to contract.
class ContractionError : public ConvergenceError {
 public:
  using ConvergenceError::ConvergenceError;
};

}  // namespace ww
