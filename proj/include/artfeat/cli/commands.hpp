#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace artfeat::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitNoOutput = 2,  // extraction produced nothing
  kExitConfig = 3,    // configuration, spec or schema error
  kExitNumerical = 4, // rank deficiency, non-positive log argument, ...
};

/// Runs one invocation. `args` excludes the program name. Tables and CSVs
/// go to files named by --out; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace artfeat::cli
