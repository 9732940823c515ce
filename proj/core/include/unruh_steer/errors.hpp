#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace unruh_steer {

enum class ErrorCode {
  kDomain,
  kNonHermitian,
  kDegenerateBasis,
  kNotPositive,
  kDegenerateLimit,
  kUnsupportedDirection,
  kUnphysicalDrift,
  kDenominatorZero,
};

std::string_view to_string(ErrorCode code);

/// Every recoverable failure in the library is reported with this type.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace unruh_steer
