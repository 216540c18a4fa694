#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hybridmac::cli {

/// Exit statuses of the command-line tool.
enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kConfig = 2,
    kInfeasible = 3,
    kIo = 4,
};

/// Runs `hybridmac <subcommand> ...`. Results go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hybridmac::cli
