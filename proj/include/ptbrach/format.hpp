#pragma once

#include <cstdio>
#include <string>

namespace ptbrach {

// 17 significant digits: enough for exact IEEE-754 double round-trips, so
// repeated runs with identical inputs diff byte-identically.
inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace ptbrach
