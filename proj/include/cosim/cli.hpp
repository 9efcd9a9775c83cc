#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cosim::cli {

/// Exit codes shared by every command.
enum ExitCode : int { kOk = 0, kDataProblem = 1, kUsage = 2 };

/// Runs one `cosim` invocation. `args` excludes the program name. Data goes
/// to `out` (or files), diagnostics to `err`.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace cosim::cli
