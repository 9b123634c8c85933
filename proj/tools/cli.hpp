#pragma once

#include <iosfwd>

namespace relifit::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kFitFailure = 3,
  kIo = 4,
};

/// Runs the relifit command line. Summaries and tables go to `out`,
/// diagnostics to `err`. Every failure prints one line of the form
/// "relifit: error[E_XXX]: message" and returns the matching exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace relifit::cli
