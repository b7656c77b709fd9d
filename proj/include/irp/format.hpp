#pragma once

#include <charconv>
#include <string>

namespace irp {

/// Locale-independent shortest-exact form with at most 17 significant digits.
inline std::string format_real(double value) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, ec == std::errc() ? ptr : buf);
}

}  // namespace irp
