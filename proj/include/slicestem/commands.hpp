#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace slicestem::cli {

/// Exit codes: 0 success or Vanishes, 2 Unknown, 1 usage or validation error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUnknown = 2;

/// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace slicestem::cli
