#pragma once

#include <atomic>
#include <ostream>

namespace fglforge {

enum ExitCode : int { kExitVerified = 0, kExitFailed = 1, kExitUsage = 2, kExitInterrupted = 130 };

// Set by SIGINT while a suite runs; tests may set it directly.
std::atomic<bool>& interrupt_flag();

// fgl-forge entry point. Text goes to `out` unless --json - is given, in
// which case `out` receives the canonical JSON document.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fglforge
