#pragma once

#include <stdexcept>
#include <string>

namespace hk {

/// A request exceeds a table size, degree cap, or enumeration limit.
class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite or out-of-domain input (including inadmissible weight exponents).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical self-check failed: the doubling gate, or a non-converged iteration.
class ToleranceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hk
