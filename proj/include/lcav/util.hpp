#pragma once

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>

namespace lcav {

/// Shortest decimal representation that round-trips to the same double.
inline std::string fmt_double(double x) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  (void)ec;
  return std::string(buf, ptr);
}

/// FNV-1a 64-bit hash, used to fingerprint manifests.
inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace lcav
