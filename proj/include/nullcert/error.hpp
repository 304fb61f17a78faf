#pragma once

#include <stdexcept>
#include <string>

namespace nullcert {

// Bad user-facing configuration: unknown tags, out-of-range flags, budget.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An operation was called outside its contract.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Mixing elements of two different prime fields.
class FieldMismatch : public PreconditionError {
 public:
  FieldMismatch() : PreconditionError("operands belong to different prime fields") {}
};

// Something that must hold for valid inputs did not. Always a bug.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace nullcert
