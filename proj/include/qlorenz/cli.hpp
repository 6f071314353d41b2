#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qlorenz {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitIo = 1,
  kExitUsage = 2,
  kExitNumerical = 3,
};

/// Runs one CLI invocation. `args` excludes the program name. Results go to
/// `out` (or to the file named by --out) only when the command succeeds;
/// diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qlorenz
