#pragma once

#include <string>

namespace plainloop {

// Integers print without a fraction ("85"); other values print in their
// shortest round-trip form padded to two decimals ("0.8" -> "0.80").
std::string format_number(double value);

// Fixed decimals, for reports.
std::string format_fixed(double value, int decimals);

}  // namespace plainloop
