#pragma once

#include <stdexcept>
#include <string>

namespace noisyfb {

// Invalid or inconsistent experiment configuration. The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A mathematical quantity is undefined for the given argument (division by zero, divergent integral).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The exponential-weights boundedness hypothesis -eta * estimate <= 1 was violated.
class HypothesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Instance too large for exhaustive enumeration.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Operation is not defined for this variant (e.g. planted action of a fixed sequence).
class NotApplicableError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace noisyfb
