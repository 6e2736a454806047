#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace volterra::cli {

enum ExitCode : int {
  kSuccess = 0,
  kConditionFailure = 1,
  kNonConvergence = 2,
  kMalformedInput = 3,
};

/// Runs one command. `args` excludes the program name, e.g.
/// {"check", "--operator", "op.json", "--face", "1..5"}.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace volterra::cli
