#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace otcut::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitFailure = 3;

// Runs one `otcut` invocation. `args` excludes the program name. Reports and
// help go to `out`, diagnostics and warnings to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace otcut::cli
