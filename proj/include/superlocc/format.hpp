#pragma once

#include <string>

namespace superlocc {

/// 17 significant digits: parses back to the identical double.
std::string format_exact(double x);

/// 6 significant digits, for human-readable output.
std::string format_short(double x);

}  // namespace superlocc
