#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace moledrill::cli {

enum ExitCode : int {
    kOk = 0,
    kCheckFailed = 1,
    kInputError = 2,
    kInfeasible = 3,
};

/// Runs one subcommand. `args` excludes the program name. All output goes to the two
/// streams, so the front end can be driven in-process by tests.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace moledrill::cli
