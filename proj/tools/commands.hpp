#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace idealflow::cli {

// Process exit codes.
enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailed = 1,
  kInputError = 2,
  kNotStronglyConnected = 3,
};

// Runs one invocation; args excludes the program name. Data goes to files or
// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace idealflow::cli
