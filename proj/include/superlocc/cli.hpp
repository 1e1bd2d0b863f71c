#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace superlocc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumerical = 3;

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics and warnings to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace superlocc::cli
