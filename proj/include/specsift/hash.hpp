#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace specsift {

/// FNV-1a over bytes; used for stable assertion ids and request digests.
inline uint64_t fnv1a64(std::string_view data) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(uint64_t v);

}  // namespace specsift
