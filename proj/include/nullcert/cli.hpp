#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace nullcert::cli {

/// Process exit codes. CI pipelines gate on these.
enum ExitCode : int {
  kOk = 0,
  kCounterexample = 1,  // a sweep found a violation, or a check failed
  kConfigError = 2,
  kHypothesisUnmet = 3,
};

/// Runs one subcommand; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nullcert::cli
