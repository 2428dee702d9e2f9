#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hwb::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 2,
  kDomain = 3,
  kResource = 4,
};

// Runs one command line (without the program name). The payload goes to
// `out`, diagnostics to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hwb::cli
