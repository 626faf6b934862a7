#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace polyflow::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kClaimFailed = 2;

/// Runs the command line `args` (program name excluded).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polyflow::cli
