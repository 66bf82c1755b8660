#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace longmem::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInputError = 2,
  kNumericalError = 3,
  kEstimationError = 4,
};

// Entry point shared by the executable and the tests. args excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace longmem::cli
