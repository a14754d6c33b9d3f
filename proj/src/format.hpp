#pragma once

#include <cstdio>
#include <string>

namespace permbound {

// Round-trippable text form used by every CSV writer.
inline std::string fmt_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace permbound
