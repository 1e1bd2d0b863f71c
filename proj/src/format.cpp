#include "superlocc/format.hpp"

#include <cmath>
#include <cstdio>

namespace superlocc {

namespace {

std::string format_with(const char* fmt, double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, fmt, x);
  return buf;
}

}  // namespace

std::string format_exact(double x) { return format_with("%.17g", x); }
std::string format_short(double x) { return format_with("%.6g", x); }

}  // namespace superlocc
