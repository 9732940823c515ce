#include "unruh_steer/errors.hpp"

namespace unruh_steer {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDomain: return "DomainError";
    case ErrorCode::kNonHermitian: return "NonHermitian";
    case ErrorCode::kDegenerateBasis: return "DegenerateBasis";
    case ErrorCode::kNotPositive: return "NotPositive";
    case ErrorCode::kDegenerateLimit: return "DegenerateLimit";
    case ErrorCode::kUnsupportedDirection: return "UnsupportedDirection";
    case ErrorCode::kUnphysicalDrift: return "UnphysicalDrift";
    case ErrorCode::kDenominatorZero: return "DenominatorZero";
  }
  return "Error";
}

}  // namespace unruh_steer
