#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hypermetric::cli {

enum ExitCode : int {
  kOk = 0,
  kDomain = 1,
  kIo = 2,
  kResourceCap = 3,
};

/// Runs one subcommand. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hypermetric::cli
