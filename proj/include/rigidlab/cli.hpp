#pragma once

#include <iosfwd>

namespace rigidlab {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 2;
inline constexpr int kExitIndeterminate = 3;
inline constexpr int kExitUsage = 64;

/// Subcommands: check-surface, pair-check, flex-kernel, pointwise-gauss,
/// boundary, catalog. Writes the JSON report to --report (stdout otherwise)
/// and a one-line summary per check to `log`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& log);

}  // namespace rigidlab
