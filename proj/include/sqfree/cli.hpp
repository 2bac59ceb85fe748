#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sqfree {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitInvalid = 2,
  kExitRange = 3,
  kExitInconsistent = 4,
};

/// Runs the tool on `args` (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sqfree
