#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hecke {

/// Operands come from different group backends (or matrix sizes).
class BackendMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An enumeration ran past its configured size cap.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, std::size_t partial)
      : std::runtime_error(what + " (partial size " + std::to_string(partial) + ")"),
        partial_(partial) {}

  std::size_t partial() const noexcept { return partial_; }

 private:
  std::size_t partial_;
};

/// The requested operation is not available for this pair / length.
class Unsupported : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal consistency audit failed; indicates a canonicalizer bug.
class AuditFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace hecke
