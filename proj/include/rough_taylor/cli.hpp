#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rough {

/// Exit codes of the batch runner.
inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs one subcommand; args exclude the program name. CSV goes to out (or
/// the --out file), diagnostics and summaries to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rough
