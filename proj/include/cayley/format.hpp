#pragma once

#include <array>
#include <charconv>
#include <string>

namespace cayley {

/// Shortest round-trip decimal form; independent of the C locale.
inline std::string format_double(double value) {
  std::array<char, 32> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return ec == std::errc{} ? std::string(buf.data(), end) : std::string("nan");
}

}  // namespace cayley
