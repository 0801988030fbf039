#pragma once

#include <cstdlib>
#include <string>

#include "plainloop/common/kv_config.hpp"

namespace plainloop::testing {

inline std::string data_path(const std::string& relative) {
  return std::string(PLAINLOOP_TEST_DATA_DIR) + "/" + relative;
}

inline std::string golden_path(const std::string& relative) {
  return std::string(PLAINLOOP_GOLDEN_DIR) + "/" + relative;
}

// File contents without the trailing newline.
inline std::string read_text(const std::string& path) {
  auto text = read_file(path);
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
  return text;
}

inline std::string appendix_a(const std::string& which) {
  return read_text(data_path("appendix_a/" + which + ".txt"));
}

// Frozen output. Set PLAINLOOP_UPDATE_GOLDEN=1 to rewrite the file from the
// current run; otherwise returns the stored text for comparison.
inline std::string golden(const std::string& name, const std::string& actual) {
  const auto path = golden_path(name);
  if (std::getenv("PLAINLOOP_UPDATE_GOLDEN") != nullptr) write_file(path, actual);
  return read_file(path);
}

}  // namespace plainloop::testing
