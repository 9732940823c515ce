#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace unruh_steer::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitInternal = 70;
inline constexpr int kExitIo = 74;

/// Runs one `unruh-steer` invocation. `args` excludes the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace unruh_steer::cli
