#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cvp::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kInfeasible = 2;
inline constexpr int kMismatch = 3;

/// args excludes the program name. Artifacts go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cvp::cli
