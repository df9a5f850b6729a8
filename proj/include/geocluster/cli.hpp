#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace geocluster {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitInput = 1,       // bad flags, unreadable or malformed files, unsupported combinations
  kExitInfeasible = 2,  // infeasible instance, oracle guard, verification mismatch
  kExitBudget = 3,      // --max-branches / --timeout-ms exhausted
};

/// Runs `geocluster <subcommand> ...` with `args` excluding the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace geocluster
