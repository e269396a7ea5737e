#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace sepwidth {

/// Shortest decimal text that reads back to the same double.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

/// Exact parse of text written by format_double (or any decimal/scientific
/// literal). Returns false on trailing garbage.
inline bool parse_double(std::string_view s, double& out) {
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

}  // namespace sepwidth
