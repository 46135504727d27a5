#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gabor_super::cli {

enum ExitCode : int {
  kOk = 0,
  kUsageOrIo = 1,
  kDomain = 2,
  kConvergence = 3,
};

/// Runs `gabor-super` with the given arguments (without the program name).
/// Results go to --out or, by default, `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gabor_super::cli
