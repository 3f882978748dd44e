#pragma once

#include <stdexcept>
#include <string>

namespace mac {

/// Malformed input or a violated precondition. The CLI maps this to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A geometric model would exceed the configured simplex budget (exit code 3).
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Internal consistency check failed (e.g. a coboundary that does not square to zero).
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace mac
