#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace stochorder::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kSuccess = 0,
  kReproductionFailed = 1,
  kInputError = 2,
};

/// Runs one command line (args exclude the program name) and returns its exit
/// code. Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stochorder::cli
