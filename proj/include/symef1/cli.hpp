#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace symef1::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
    ok = 0,
    negative = 1,        ///< violated, infeasible, not found, not applicable
    input_error = 2,     ///< unreadable or malformed input, bad usage
    budget_exhausted = 3,
};

/// Runs one invocation. args[0] is the program name.
int run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err);

} // namespace symef1::cli
