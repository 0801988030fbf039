#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace plainloop {

std::array<std::uint8_t, 32> sha256(std::string_view data);
std::string sha256_hex(std::string_view data);

// Maps (seed, key) to a uniform value in [0, 1) using the first eight bytes
// of SHA-256(seed ':' key). Stable across platforms and runs.
double uniform_hash(std::uint64_t seed, std::string_view key);

}  // namespace plainloop
