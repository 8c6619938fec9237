#pragma once

#include <stdexcept>
#include <string>

namespace stochorder {

enum class ErrorCode {
  EmptyDistribution,
  NotNormalizable,
  InvalidAtom,
  SupportTooLarge,
  UndefinedAtSupport,
  InvalidGrid,
  EmptyComparisonRegion,
  SampleTooSmall,
  InvalidEpsilon,
  ParseError,
  InvalidArgument,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyDistribution: return "EmptyDistribution";
    case ErrorCode::NotNormalizable: return "NotNormalizable";
    case ErrorCode::InvalidAtom: return "InvalidAtom";
    case ErrorCode::SupportTooLarge: return "SupportTooLarge";
    case ErrorCode::UndefinedAtSupport: return "UndefinedAtSupport";
    case ErrorCode::InvalidGrid: return "InvalidGrid";
    case ErrorCode::EmptyComparisonRegion: return "EmptyComparisonRegion";
    case ErrorCode::SampleTooSmall: return "SampleTooSmall";
    case ErrorCode::InvalidEpsilon: return "InvalidEpsilon";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace stochorder
