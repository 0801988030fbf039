#include "plainloop/common/hash.hpp"

#include <openssl/evp.h>

#include <memory>

#include "plainloop/common/error.hpp"

namespace plainloop {

std::array<std::uint8_t, 32> sha256(std::string_view data) {
  std::array<std::uint8_t, 32> digest{};
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  unsigned int length = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest.data(), &length) != 1 || length != digest.size()) {
    throw Error(ErrorCode::InvalidArgument, "sha256 digest failed");
  }
  return digest;
}

std::string sha256_hex(std::string_view data) {
  static constexpr char kHex[] = "0123456789abcdef";
  const auto digest = sha256(data);
  std::string out;
  out.reserve(64);
  for (const auto byte : digest) {
    out.push_back(kHex[byte >> 4]);
    out.push_back(kHex[byte & 0x0F]);
  }
  return out;
}

double uniform_hash(std::uint64_t seed, std::string_view key) {
  std::string material = std::to_string(seed);
  material.push_back(':');
  material.append(key);
  const auto digest = sha256(material);
  std::uint64_t value = 0;
  for (int i = 0; i < 8; ++i) value = (value << 8) | digest[static_cast<std::size_t>(i)];
  // 53 high bits give an exactly representable double in [0, 1).
  return static_cast<double>(value >> 11) * 0x1.0p-53;
}

}  // namespace plainloop
