#include "rig/error.hpp"

namespace rig {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Syntax: return "SyntaxError";
    case ErrorKind::Schema: return "SchemaError";
    case ErrorKind::UnknownMorphism: return "UnknownMorphism";
    case ErrorKind::UnknownObject: return "UnknownObject";
    case ErrorKind::OffsetOutOfRange: return "OffsetOutOfRange";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::PassThroughInconsistent: return "PassThroughInconsistent";
    case ErrorKind::TypingViolation: return "TypingViolation";
    case ErrorKind::MissingLabel: return "MissingLabel";
    case ErrorKind::BoundaryMismatch: return "BoundaryMismatch";
    case ErrorKind::TypeError: return "TypeError";
    case ErrorKind::PatternMismatch: return "PatternMismatch";
    case ErrorKind::NonEmptySignature: return "NonEmptySignature";
    case ErrorKind::MissingCarrier: return "MissingCarrier";
    case ErrorKind::MissingTable: return "MissingTable";
    case ErrorKind::Regularity: return "RegularityViolation";
    case ErrorKind::Arity: return "ArityError";
    case ErrorKind::Internal: return "InternalError";
  }
  return "Error";
}

}  // namespace rig
