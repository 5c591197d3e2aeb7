#pragma once

#include <stdexcept>
#include <string>

namespace artin {

enum class ErrorKind {
  Syntax,          // malformed input document or word
  Validation,      // graph invariant violated (label < 2, loop, duplicate)
  Precondition,    // operation precondition not met
  ModulusMismatch, // mixed dihedral moduli
  IdentityInput,   // classification of the trivial element
  Spec,            // malformed elliptic/contact specification
  Mode,            // operation not applicable (e.g. RAAG oracle on labels > 2)
  ResourceLimit,   // vertex budget exceeded
  PointOutsideBall,
  StructureViolation,
  CaseMismatch,
  BallTooSmall,
  AngleTooSmall,
  DisjointnessUnknown,
  Unresolved,
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Syntax: return "SyntaxError";
    case ErrorKind::Validation: return "ValidationError";
    case ErrorKind::Precondition: return "PreconditionError";
    case ErrorKind::ModulusMismatch: return "ModulusMismatch";
    case ErrorKind::IdentityInput: return "IdentityInput";
    case ErrorKind::Spec: return "SpecError";
    case ErrorKind::Mode: return "ModeError";
    case ErrorKind::ResourceLimit: return "ResourceLimit";
    case ErrorKind::PointOutsideBall: return "PointOutsideBall";
    case ErrorKind::StructureViolation: return "StructureViolation";
    case ErrorKind::CaseMismatch: return "CaseMismatch";
    case ErrorKind::BallTooSmall: return "BallTooSmall";
    case ErrorKind::AngleTooSmall: return "AngleTooSmall";
    case ErrorKind::DisjointnessUnknown: return "DisjointnessUnknown";
    case ErrorKind::Unresolved: return "Unresolved";
  }
  return "Error";
}

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
  throw Error(kind, std::string(error_kind_name(kind)) + ": " + msg);
}

}  // namespace artin
