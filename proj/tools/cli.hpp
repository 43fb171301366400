#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rastershape::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitBadInput = 2;

/// Runs the command line `args` (args[0] is the program name) and returns the
/// process exit code. All output goes to `out` / `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rastershape::cli
