#pragma once

#include <stdexcept>
#include <string>

namespace fou {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Caller violated a documented precondition (e.g. a LAN shift leaving the
// parameter space).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The observed information matrix is too close to singular to invert.
class ConditioningError : public std::runtime_error {
 public:
  ConditioningError(const std::string& what, double det)
      : std::runtime_error(what), det_(det) {}
  double det() const noexcept { return det_; }

 private:
  double det_;
};

// Broken internal invariant; indicates a bug rather than bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Malformed configuration file or override.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fou
