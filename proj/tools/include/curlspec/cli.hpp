#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace curlspec::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs the curlspec command line. `args` excludes the program name.
/// Results go to `out` (or the file named by --out); diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace curlspec::cli
