#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace liecat {

/// Exit codes of the command line tool.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line tool on `args` (without the program name). The
/// report goes to `out`, usage errors to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace liecat
