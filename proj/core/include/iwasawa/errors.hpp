#pragma once

#include <stdexcept>
#include <string>

namespace iwasawa {

// Input outside the domain of an operation (non-unit where a unit is needed,
// invalid topological generator, p = 2, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Operands live in different quotient rings or at different primes.
class ContextMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A result is requested at a precision the inputs cannot support.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotAUnit : public DomainError {
 public:
  using DomainError::DomainError;
};

// Rational function whose reduced denominator vanishes at T = 0.
class NotInPowerSeriesRing : public DomainError {
 public:
  using DomainError::DomainError;
};

// Rational function over Q that is not an element of Z_p[[T]].
class NotInLambda : public DomainError {
 public:
  using DomainError::DomainError;
};

// Character table rejected by validation; `witness()` names the offending
// entry or divisor.
class CharacterError : public std::invalid_argument {
 public:
  CharacterError(const std::string& what, std::string witness)
      : std::invalid_argument(what), witness_(std::move(witness)) {}
  const std::string& witness() const noexcept { return witness_; }

 private:
  std::string witness_;
};

// Work estimate above the configured resource guard.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace iwasawa
