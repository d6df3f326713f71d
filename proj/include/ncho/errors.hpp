#pragma once

#include <stdexcept>
#include <string>

namespace ncho {

/// Raised when an argument is outside the mathematical domain of an operation
/// (for example alpha*beta <= 1, or u outside the open unit cube).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a computation produces a value that cannot be trusted:
/// a non-positive integrand denominator, a diverging quadrature, an
/// underflowing principal minor, or a branch inconsistency.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ncho
