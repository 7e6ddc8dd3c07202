#include "coxvar/error.hpp"

namespace coxvar {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnsupportedType: return "UnsupportedType";
    case ErrorKind::RankOutOfRange: return "RankOutOfRange";
    case ErrorKind::OrderLimitExceeded: return "OrderLimitExceeded";
    case ErrorKind::NonFiniteDiagram: return "NonFiniteDiagram";
    case ErrorKind::MixedRings: return "MixedRings";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::NotAField: return "NotAField";
    case ErrorKind::UnassignedVariable: return "UnassignedVariable";
    case ErrorKind::GeneratorNotInJ: return "GeneratorNotInJ";
    case ErrorKind::ReflectionNotOnEdge: return "ReflectionNotOnEdge";
    case ErrorKind::InvarianceViolation: return "InvarianceViolation";
    case ErrorKind::NoFullSupportReflection: return "NoFullSupportReflection";
    case ErrorKind::BlocksOverlap: return "BlocksOverlap";
    case ErrorKind::NonIntegerExponent: return "NonIntegerExponent";
    case ErrorKind::VariableCollision: return "VariableCollision";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace coxvar
