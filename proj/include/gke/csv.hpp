#pragma once

#include <charconv>
#include <string>

namespace gke {

// Shortest round-trip decimal form, locale-independent ('.' separator always).
inline std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace gke
