#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>

#include "plainloop/common/kv_config.hpp"

namespace plainloop::ruledsl {

inline constexpr const char* kWildcard = "*";

// (profile, domain, symbol) -> number. Symbols match case-insensitively.
// Lookup order: (profile, domain), (profile, *), (*, domain), (*, *).
class ThresholdTable {
 public:
  struct Entry {
    double value = 0.0;
    std::string profile;  // as matched, possibly "*"
    std::string domain;
    std::string note;     // calibration source
  };

  void set(const std::string& profile, const std::string& domain, const std::string& symbol, double value,
           std::string note = {});

  std::optional<Entry> lookup(const std::string& symbol, const std::string& profile,
                              const std::string& domain) const;
  // Declared for some profile/domain pair.
  bool declares(const std::string& symbol) const;
  std::set<std::string> symbols() const;
  bool empty() const { return entries_.empty(); }

  // thresholds.<profile>.<domain>.<symbol> = <number>
  // thresholds.<profile>.<domain>.<symbol>.note = <text>
  static ThresholdTable from_config(const KeyValueConfig& config);
  static ThresholdTable load(const std::string& path);

 private:
  std::map<std::tuple<std::string, std::string, std::string>, Entry> entries_;
};

}  // namespace plainloop::ruledsl
