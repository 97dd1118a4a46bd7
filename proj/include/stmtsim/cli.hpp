#pragma once

#include <iosfwd>

namespace stmtsim {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
    kExitOk = 0,
    kExitInput = 2,
    kExitIo = 3,
    kExitBudget = 4,
};

/// Runs the stmtsim command line. Subcommands: parse, ted, transted, eval,
/// oracle. The STMTSIM_RULES environment variable names the default rule
/// file when --rules is absent.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace stmtsim
