#pragma once

#include <iosfwd>

namespace robincap {

enum ExitCode : int {
    kExitSuccess = 0,
    kExitUsage = 1,
    kExitComputation = 2,
    kExitVerification = 3,
};

/// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "ROBINCAP_OUTPUT_DIR";

/// Entry point of the `robincap` tool; returns the process exit status.
int runCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace robincap
