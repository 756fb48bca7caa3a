#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rectpack {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,        // success / verified
  kExitNegative = 1,  // infeasible, unverified, failed check
  kExitUsage = 2,     // usage or input error
};

/// Runs the command line `args` (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rectpack
