#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace remul {

// Stable exit codes, also listed in --help.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;      // unknown flags, missing arguments
inline constexpr int kExitValidation = 3; // rejected inputs, violated preconditions
inline constexpr int kExitInternal = 4;   // unexpected failures

// Runs the command line (without the program name) against the given
// streams. All output, including structured reports, goes to `out`;
// diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace remul
