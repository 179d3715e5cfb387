#pragma once

namespace investornet::cli {

// Exit codes are part of the command-line API.
enum ExitCode : int { kOk = 0, kConfigError = 1, kDataError = 2, kSelftestFailure = 3 };

// Subcommands: analyze, synth, selftest, export-trees.
int run(int argc, const char* const* argv);

}  // namespace investornet::cli
