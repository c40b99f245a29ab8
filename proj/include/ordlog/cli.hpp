#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ordlog {

/// Exit statuses shared by every subcommand.
enum ExitCode : int { kExitOk = 0, kExitNone = 1, kExitInput = 2, kExitTruncated = 3 };

/// Runs `ordlog` with args (program name excluded) and returns the exit status.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ordlog
