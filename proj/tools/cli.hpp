#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace driftlab::cli {

enum ExitCode : int {
    ok = 0,
    validation_error = 2,
    construction_warning = 3,
    violation_found = 4,
    inconclusive = 5,
};

/// Runs one CLI invocation. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace driftlab::cli
