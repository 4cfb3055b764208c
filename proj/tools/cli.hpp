#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace camshift::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kViolation = 2,
  kBudget = 3,
  kMalformed = 4,
};

// Runs one invocation. args excludes the program name. Reports go to out
// only after the command has fully succeeded; diagnostics go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace camshift::cli
