#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sdvrp::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 2,       // bad flags, unreadable or malformed input files
    kInfeasible = 3,  // strategy cannot serve the instance, mismatched files
    kInternal = 4,    // a result failed its own validation
};

/// Runs one invocation. `args` excludes the program name. Normal output goes
/// to `out`, diagnostics to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace sdvrp::cli
