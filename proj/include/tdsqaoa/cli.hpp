#pragma once

#include <iosfwd>

namespace tdsqaoa {

/// Exit codes of the command-line front end.
enum ExitCode : int { kOk = 0, kUsage = 1, kInfeasible = 2, kInternal = 3 };

/// Subcommands: compile, bound, oracle, run, sweep, trace.
int cli_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tdsqaoa
