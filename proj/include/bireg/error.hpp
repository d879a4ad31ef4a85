#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bireg {

enum class ErrorCode {
  InvalidArgument,
  NonIntegerKN,
  NonIntegerKD,
  KdExceedsN,
  DExceedsN,
  NonIntegerK,
  IndexOutOfRange,
  DirectionUnavailable,
  EmptySide,
  PreconditionViolated,
  RejectionInfeasible,
  TooLarge,
  InsufficientSamples,
  UnequalSides,
  OutOfRange,
  HypothesisViolated,
  EdgeAbsent,
  LayerOutOfRange,
  NonIntegralLayer,
  InvalidDegree,
  NonPositiveValue,
  InvalidP,
  ParseError,
  DegreeViolation,
  IoError,
};

std::string_view to_string(ErrorCode code);

// Every library failure is reported through this type. `detail` carries the
// offending line number (ParseError) or vertex index (DegreeViolation).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::int64_t> detail = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::int64_t> detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::optional<std::int64_t> detail_;
};

}  // namespace bireg
