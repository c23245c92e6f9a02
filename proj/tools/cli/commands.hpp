#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tmhc::cli {

/// Exit status contract shared by every subcommand.
enum ExitCode : int { kSuccess = 0, kInternalError = 1, kInputError = 2 };

/// Runs `tmhc <args...>` (args excludes the program name). Human-readable
/// text goes to `out`, diagnostics to `err`; machine output goes to files.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tmhc::cli
