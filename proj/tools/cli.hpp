#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace selfsim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Runs one command line. `args[0]` is the program name. Normal output goes
/// to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Reads `key=value` lines (blank lines and `#` comments skipped) and returns
/// them as `--key=value` arguments.
std::vector<std::string> config_arguments(const std::string& path);

}  // namespace selfsim::cli
