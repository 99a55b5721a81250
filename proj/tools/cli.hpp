#pragma once

namespace hk::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitInconclusive = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitIo = 74;

/// Parses the command line, runs the selected checks, writes the manifest and
/// tables, and returns the process exit status.
int run(int argc, const char* const* argv);

}  // namespace hk::cli
