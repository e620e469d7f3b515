#pragma once

// The `swtorus` command-line driver, callable in-process so the acceptance run can compare
// reports without spawning processes.

#include <ostream>
#include <string>
#include <vector>

namespace swtorus::cli {

// Stable exit-code contract.
enum ExitCode : int {
    kOk = 0,
    kAlgebraFailure = 1,
    kDiscretization = 2,
    kNonConvergence = 3,
    kIoError = 4,
    kTopologyInput = 5,
    kUsage = 6,  // unparseable flags or parameters rejected before dispatch
};

// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace swtorus::cli
