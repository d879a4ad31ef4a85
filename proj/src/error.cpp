#include "bireg/error.hpp"

namespace bireg {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonIntegerKN: return "NonIntegerKN";
    case ErrorCode::NonIntegerKD: return "NonIntegerKD";
    case ErrorCode::KdExceedsN: return "KdExceedsN";
    case ErrorCode::DExceedsN: return "DExceedsN";
    case ErrorCode::NonIntegerK: return "NonIntegerK";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::DirectionUnavailable: return "DirectionUnavailable";
    case ErrorCode::EmptySide: return "EmptySide";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::RejectionInfeasible: return "RejectionInfeasible";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::UnequalSides: return "UnequalSides";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::EdgeAbsent: return "EdgeAbsent";
    case ErrorCode::LayerOutOfRange: return "LayerOutOfRange";
    case ErrorCode::NonIntegralLayer: return "NonIntegralLayer";
    case ErrorCode::InvalidDegree: return "InvalidDegree";
    case ErrorCode::NonPositiveValue: return "NonPositiveValue";
    case ErrorCode::InvalidP: return "InvalidP";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DegreeViolation: return "DegreeViolation";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message,
             std::optional<std::int64_t> detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      detail_(detail) {}

}  // namespace bireg
