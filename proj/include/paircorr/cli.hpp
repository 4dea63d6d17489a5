#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace paircorr::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `paircorr` tool. args[0] is the program name.
/// CSV goes to `out` (or the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace paircorr::cli
