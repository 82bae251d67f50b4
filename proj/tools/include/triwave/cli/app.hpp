#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace triwave::cli {

/// Exit codes of the triwave tool.
enum ExitCode : int { kOk = 0, kUsage = 1, kNumerical = 2 };

/// Runs the command line (args[0] is the program name). Summary lines go to
/// `out`, diagnostics and usage text to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace triwave::cli
