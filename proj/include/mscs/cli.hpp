#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mscs::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitPropertyFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs one subcommand. `args` excludes the program name. Exit 0 on
/// success, 1 when a checked property fails, 2 on usage or input errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace mscs::cli
