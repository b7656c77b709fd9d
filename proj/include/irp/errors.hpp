#pragma once

#include <stdexcept>
#include <string>

namespace irp {

/// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside the domain on which an operation is defined (v <= 0, rho <= 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A physically required sign condition failed (P <= 0, theta <= 0).
class NonphysicalState : public Error {
 public:
  using Error::Error;
};

class NonhyperbolicState : public Error {
 public:
  using Error::Error;
};

/// A dimensionless quantity would divide by zero (P, theta or F_vv vanish).
class DivisionByZero : public Error {
 public:
  using Error::Error;
};

class InversionFailure : public Error {
 public:
  using Error::Error;
};

/// Closed-form entropy inversion has no root with positive temperature.
class NoPhysicalRoot : public InversionFailure {
 public:
  using InversionFailure::InversionFailure;
};

/// Limiter precondition violated: the cell average is not in the invariant region.
class AverageOutsideRegion : public Error {
 public:
  using Error::Error;
};

class StepFailure : public Error {
 public:
  using Error::Error;
};

class MaxStepsExceeded : public Error {
 public:
  using Error::Error;
};

class InadmissibleInitialData : public Error {
 public:
  using Error::Error;
};

class VacuumFormation : public Error {
 public:
  using Error::Error;
};

/// Configuration problem; `key()` is `section.key` when one applies.
class ConfigError : public Error {
 public:
  ConfigError(std::string key, const std::string& what)
      : Error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace irp
