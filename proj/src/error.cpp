#include "hvl/error.hpp"

namespace hvl {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::SingularAtOrigin: return "SingularAtOrigin";
    case ErrorCode::ZeroLambda: return "ZeroLambda";
    case ErrorCode::EmptyArc: return "EmptyArc";
    case ErrorCode::IterationCapReached: return "IterationCapReached";
    case ErrorCode::ZeroSymbol: return "ZeroSymbol";
    case ErrorCode::DegenerateWitness: return "DegenerateWitness";
    case ErrorCode::SelectionExhausted: return "SelectionExhausted";
    case ErrorCode::PrecisionFloor: return "PrecisionFloor";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace hvl
