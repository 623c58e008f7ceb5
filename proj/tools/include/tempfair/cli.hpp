#pragma once

#include <ostream>

namespace tempfair {

enum ExitCode : int {
  kExitOk = 0,
  kExitFalse = 1,  // false verdict, no witness, or a fixture mismatch
  kExitUsage = 2,  // bad flags, unreadable or invalid input, setting violations
};

/// Entry point of the `tempfair` tool, minus the process. Everything printed
/// goes to `out` (results) or `err` (diagnostics).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tempfair
