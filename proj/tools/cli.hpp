#pragma once

// The projdyn command-line front end as a library call, so that tests can
// drive it without spawning processes.

#include <ostream>
#include <string>
#include <vector>

namespace projdyn::cli {

enum ExitCode : int {
  kSuccess = 0,
  /// Well-formed negative answer, e.g. no witness within the bound.
  kNegative = 1,
  kUsage = 2,
  kDegenerate = 3,
};

/// Runs one invocation. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace projdyn::cli
