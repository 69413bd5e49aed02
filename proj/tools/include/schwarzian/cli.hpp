#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace schwarzian::cli {

/// Exit statuses of the command-line tool.
enum ExitCode : int { kPass = 0, kCheckFailed = 1, kUsage = 2 };

/// Runs the tool on argv-style arguments (without the program name). The
/// report goes to `out` unless --out names a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace schwarzian::cli
