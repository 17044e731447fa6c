#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace iwa {

// Base class of every recoverable error thrown by the library. Logic bugs
// (violated internal invariants) throw std::logic_error instead.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Two values from distinct field descriptors were combined.
struct FieldMismatchError : Error {
  using Error::Error;
};

struct DivisionByZeroError : Error {
  DivisionByZeroError() : Error("division by zero") {}
  using Error::Error;
};

struct DimensionError : Error {
  using Error::Error;
};

// Violated operation precondition (zero vector, wrong genus, ...).
struct PreconditionError : Error {
  using Error::Error;
};

struct NotSublatticeError : Error {
  using Error::Error;
};

// Structured-input validation failure; `path` points at the offending field.
struct SchemaError : Error {
  std::string path;
  SchemaError(std::string path_, const std::string& what_)
      : Error(path_.empty() ? what_ : path_ + ": " + what_), path(std::move(path_)) {}
};

} // namespace iwa
