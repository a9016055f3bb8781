#pragma once

#include <iosfwd>

namespace weylwalk::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs one weylwalk subcommand. Human-readable output goes to `out`,
/// diagnostics and usage text to `err`; CSV artifacts go to --out paths.
/// Returns 0 on success, 1 when a physical check fails, 2 on usage or input errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace weylwalk::cli
