#include "plainloop/common/format.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace plainloop {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == std::floor(value) && std::fabs(value) < 1e15) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.0f", value);
    std::string out = buffer;
    return out == "-0" ? "0" : out;
  }
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  std::string out(buffer, ec == std::errc() ? ptr : buffer);
  if (out.find('e') != std::string::npos) return out;
  const auto dot = out.find('.');
  if (dot != std::string::npos && out.size() - dot - 1 < 2) out.push_back('0');
  return out;
}

std::string format_fixed(double value, int decimals) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", decimals, value);
  return buffer;
}

}  // namespace plainloop
