#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace onnham {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitData = 4;

/// Entry point of the onnham-cli tool. Subcommands: detect, evalmap, convert,
/// lut, profile, timing, compare, inspect-weights.
int run_cli(int argc, char** argv);

/// Same, with explicit arguments (args[0] is the program name) and streams.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace onnham
