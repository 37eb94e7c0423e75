#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace delkit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed model data: dangling world/event ids, missing preconditions.
class ModelError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// A caller broke a documented precondition.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

// An internal invariant check (debug instrumentation) fired.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

// Step, time or recursion budget exhausted; distinct from a negative verdict.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace delkit
