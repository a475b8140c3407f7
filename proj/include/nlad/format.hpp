#pragma once

#include <cstdio>
#include <string>

namespace nlad {

// Round-trip-exact decimal form shared by every emitted file, so identical
// runs produce byte-identical output.
inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace nlad
