#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bzphylo::cli {

enum ExitCode : int { kOk = 0, kValidation = 2, kResource = 3 };

/// Runs one command line (without the program name). Output goes to `out`,
/// diagnostics and usage to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Worker count from BZPHYLO_THREADS, else the hardware concurrency.
int thread_limit();

}  // namespace bzphylo::cli
