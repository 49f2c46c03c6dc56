#pragma once

#include <stdexcept>
#include <string>

namespace liomnet {

/// Failure categories surfaced to the CLI as distinct exit codes.
enum class ErrorCategory { argument = 2, capacity = 3, contract = 4 };

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

/// Caller passed a value outside the operation's domain.
class ArgumentError : public Error {
 public:
  explicit ArgumentError(const std::string& what) : Error(ErrorCategory::argument, what) {}
};

/// Requested problem does not fit the configured dense limit.
class CapacityError : public Error {
 public:
  explicit CapacityError(const std::string& what) : Error(ErrorCategory::capacity, what) {}
};

/// An input violated a numerical contract (Hermiticity, normalization, ...).
class ContractError : public Error {
 public:
  explicit ContractError(const std::string& what) : Error(ErrorCategory::contract, what) {}
};

inline const char* category_name(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::argument: return "argument";
    case ErrorCategory::capacity: return "capacity";
    case ErrorCategory::contract: return "contract";
  }
  return "unknown";
}

}  // namespace liomnet
