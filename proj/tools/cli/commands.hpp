#pragma once

#include <iosfwd>

namespace barypoly::cli {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitCheckFailure = 1;
inline constexpr int kExitUsage = 2;

// Entry point for the barypoly tool: alpha, trajectory, dual, verify and
// figure subcommands. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace barypoly::cli
