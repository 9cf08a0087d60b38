#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rig {

enum class ErrorKind {
  Syntax,
  Schema,
  UnknownMorphism,
  UnknownObject,
  OffsetOutOfRange,
  ArityMismatch,
  PassThroughInconsistent,
  TypingViolation,
  MissingLabel,
  BoundaryMismatch,
  TypeError,
  PatternMismatch,
  NonEmptySignature,
  MissingCarrier,
  MissingTable,
  Regularity,
  Arity,
  Internal,
};

std::string_view to_string(ErrorKind kind);

/// All library failures surface as this exception. The kind is stable and
/// tests match on it; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace rig
