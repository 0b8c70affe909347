#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace symbreak::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kDscFail = 2,
  kVerifyFail = 3,
  kLimit = 4,
};

/// Runs one command line (args excludes the program name) and returns the
/// process exit code. Human-readable output goes to `out`, diagnostics to
/// `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace symbreak::cli
