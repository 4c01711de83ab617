#pragma once

#include <stdexcept>
#include <string>

namespace cogrowth {

// Caller supplied arguments outside an operation's domain.
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// An enumeration would visit more objects than its configured budget.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// An internal identity failed (inexact division, non-integral count, ...).
// Seeing one of these means there is a bug in the engine, not in the input.
class EngineError : public std::logic_error {
 public:
  explicit EngineError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace cogrowth
