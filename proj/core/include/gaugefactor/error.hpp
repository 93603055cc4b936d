#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gaugefactor {

enum class ErrorCode {
  DimensionMismatch,
  InvalidArgument,
  CycleLimitExceeded,
  ScaleLimit,
  Unbounded,
  NotInCarrier,
  NonConvergent,
  ZeroOperator,
  OracleDisagreement,
  SearchExhausted,
  NotControlMeasure,
  Schema,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for the library; `code()` says which contract broke.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::CycleLimitExceeded: return "CycleLimitExceeded";
    case ErrorCode::ScaleLimit: return "ScaleLimit";
    case ErrorCode::Unbounded: return "Unbounded";
    case ErrorCode::NotInCarrier: return "NotInCarrier";
    case ErrorCode::NonConvergent: return "NonConvergent";
    case ErrorCode::ZeroOperator: return "ZeroOperator";
    case ErrorCode::OracleDisagreement: return "OracleDisagreement";
    case ErrorCode::SearchExhausted: return "SearchExhausted";
    case ErrorCode::NotControlMeasure: return "NotControlMeasure";
    case ErrorCode::Schema: return "Schema";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace gaugefactor
