#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace singfront::cli {

enum ExitCode {
  kOk = 0,
  kUsage = 1,
  kValidation = 2,
  kLimit = 3,
  kNoSolution = 4,
  kNumerical = 5,
};

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace singfront::cli
