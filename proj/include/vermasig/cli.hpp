#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vermasig::cli {

enum ExitCode : int { kSuccess = 0, kVerificationFailed = 1, kUsageError = 2 };

/// Runs the command line `args` (without the program name), writing reports to `out`
/// and diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// Default worker count: VERMASIG_THREADS if set to a positive integer, else 1.
unsigned default_threads();

const char *version();

}  // namespace vermasig::cli
