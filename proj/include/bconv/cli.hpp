#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bconv::cli {

enum ExitCode : int {
  kOk = 0,
  kContractViolation = 1,
  kResourceLimit = 2,
  kUnresolved = 3,
  kUsage = 64,
};

// args excludes the program name. Results go to `out` unless --out names a file.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bconv::cli
