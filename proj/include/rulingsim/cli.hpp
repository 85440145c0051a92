#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rulingsim {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;  // verification or gate failure
inline constexpr int kExitUsage = 2;   // bad flags, unreadable or malformed input

/// Entry point behind the rulingsim tool; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rulingsim
