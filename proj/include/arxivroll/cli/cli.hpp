#pragma once

#include <atomic>
#include <ostream>
#include <string>
#include <vector>

namespace arxivroll::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInterrupted = 130;

// Set by the SIGINT handler. Long-running subcommands stop taking new work,
// flush what they have and exit with kExitInterrupted.
std::atomic<bool>& interrupt_flag();

// Runs one command line; `args` excludes the program name. Results go to
// `out`, diagnostics and the provenance line to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace arxivroll::cli
