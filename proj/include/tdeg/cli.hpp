#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tdeg {

/// Exit codes of run_cli.
enum ExitCode : int { kExitOk = 0, kExitFailed = 1, kExitInvalid = 2 };

/// Runs one command line (without the program name). Output goes to out,
/// diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tdeg
