#include "plainloop/common/error.hpp"
#include "plainloop/common/utf8.hpp"
#include "plainloop/ruledsl/thresholds.hpp"

namespace plainloop::ruledsl {

void ThresholdTable::set(const std::string& profile, const std::string& domain, const std::string& symbol,
                         double value, std::string note) {
  entries_[{profile, domain, utf8::to_lower(symbol)}] = Entry{value, profile, domain, std::move(note)};
}

std::optional<ThresholdTable::Entry> ThresholdTable::lookup(const std::string& symbol, const std::string& profile,
                                                            const std::string& domain) const {
  const auto key = utf8::to_lower(symbol);
  const std::pair<std::string, std::string> order[] = {
      {profile, domain}, {profile, kWildcard}, {kWildcard, domain}, {kWildcard, kWildcard}};
  for (const auto& [p, d] : order) {
    const auto it = entries_.find({p, d, key});
    if (it != entries_.end()) return it->second;
  }
  return std::nullopt;
}

bool ThresholdTable::declares(const std::string& symbol) const {
  const auto key = utf8::to_lower(symbol);
  for (const auto& [k, entry] : entries_) {
    if (std::get<2>(k) == key) return true;
  }
  return false;
}

std::set<std::string> ThresholdTable::symbols() const {
  std::set<std::string> out;
  for (const auto& [k, entry] : entries_) out.insert(std::get<2>(k));
  return out;
}

ThresholdTable ThresholdTable::from_config(const KeyValueConfig& config) {
  ThresholdTable table;
  std::map<std::tuple<std::string, std::string, std::string>, std::string> notes;
  for (const auto& [key, value] : config.with_prefix("thresholds.")) {
    const auto parts = split(key, '.');
    if (parts.size() == 5 && parts[4] == "note") {
      notes[{parts[1], parts[2], utf8::to_lower(parts[3])}] = value;
      continue;
    }
    if (parts.size() != 4 || parts[1].empty() || parts[2].empty() || parts[3].empty()) {
      throw Error(ErrorCode::InvalidConfig,
                  "'" + key + "': expected thresholds.<profile>.<domain>.<symbol>");
    }
    table.set(parts[1], parts[2], parts[3], *config.get_number(key));
  }
  for (auto& [k, note] : notes) {
    const auto it = table.entries_.find(k);
    if (it == table.entries_.end()) {
      throw Error(ErrorCode::InvalidConfig, "note for undeclared threshold '" + std::get<2>(k) + "'");
    }
    it->second.note = note;
  }
  return table;
}

ThresholdTable ThresholdTable::load(const std::string& path) {
  return from_config(KeyValueConfig::load(path));
}

}  // namespace plainloop::ruledsl
