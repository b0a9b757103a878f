#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace evoalg {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands of incompatible dimension (matrix vs. element, A vs. R, ...).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Value outside the domain of an operation: non-finite entries,
/// division by zero in an expression, a time pair no branch covers.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A family-level nonvanishing constraint (e.g. "phi(s) != 0") failed.
class ConstraintError : public DomainError {
 public:
  ConstraintError(std::string constraint, const std::string& detail)
      : DomainError("constraint violated: " + constraint + " (" + detail + ")"),
        constraint_(std::move(constraint)) {}

  const std::string& constraint() const noexcept { return constraint_; }

 private:
  std::string constraint_;
};

/// Malformed text input. `offset` is a byte offset into the parsed text.
class ParseError : public Error {
 public:
  enum class Kind { syntax, unknown_identifier, arity };

  ParseError(Kind kind, std::size_t offset, const std::string& message)
      : Error(message + " at offset " + std::to_string(offset)),
        kind_(kind),
        offset_(offset) {}

  Kind kind() const noexcept { return kind_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  Kind kind_;
  std::size_t offset_;
};

/// classify could not match the input against any canonical form.
class UnclassifiableError : public Error {
 public:
  using Error::Error;
};

}  // namespace evoalg
