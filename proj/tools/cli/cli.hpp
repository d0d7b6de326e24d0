#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace caustica::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kInvalidStart = 2,
  kSolverFailure = 3,
  kNoConvergence = 4,
  kUsage = 64,
  kData = 65,
};

// Runs one command line (without the program name). Reports go to `out`,
// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace caustica::cli
