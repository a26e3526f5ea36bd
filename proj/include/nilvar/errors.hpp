#pragma once

#include <stdexcept>
#include <string>

namespace nilvar {

// Bad user input: malformed data, violated precondition, unsupported combination.
struct validation_error : std::runtime_error {
  explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

// A computation refused because it would exceed a configured budget.  The
// message always states both the required and the configured amount.
struct budget_error : std::runtime_error {
  explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

// An internal consistency check failed.  These guard identities that are
// theorems; if one fires the library itself is wrong.
struct internal_error : std::logic_error {
  explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace nilvar
