#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace regsum::cli {

/// Exit codes of the command-line front end.
enum ExitCode : int {
    ok = 0,
    parse_error = 1,
    not_regular = 2,   ///< NotRegular, budget exhaustion or missing exact data
    check_failed = 3,  ///< an invariant suite found a violation
};

/// Runs one command (`args` excludes the program name). Results go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Names accepted by `check`.
std::vector<std::string> check_suites();

} // namespace regsum::cli
