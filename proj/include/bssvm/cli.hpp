#pragma once

#include <iosfwd>

namespace bssvm {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,
    kExitDiverged = 2,
    kExitUsage = 64,
    kExitDataError = 65,
};

/// Entry point of the bssvm tool, writing to the given streams.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bssvm
