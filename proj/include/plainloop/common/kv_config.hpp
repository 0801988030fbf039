#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace plainloop {

// Flat `dotted.key = value` configuration. Lines starting with '#' are
// comments; blank lines are ignored; a key may appear only once.
class KeyValueConfig {
 public:
  KeyValueConfig() = default;

  static KeyValueConfig parse(std::string_view text);
  static KeyValueConfig load(const std::string& path);

  bool contains(const std::string& key) const { return entries_.count(key) != 0; }
  std::optional<std::string> get(const std::string& key) const;
  std::string get_or(const std::string& key, const std::string& fallback) const;

  // Throws InvalidConfig when the value is present but not a finite number.
  std::optional<double> get_number(const std::string& key) const;
  double number_or(const std::string& key, double fallback) const;
  std::optional<bool> get_bool(const std::string& key) const;
  // Comma separated list, items trimmed, empty items dropped.
  std::vector<std::string> get_list(const std::string& key) const;

  // All entries whose key starts with `prefix` (which should end in '.').
  std::map<std::string, std::string> with_prefix(const std::string& prefix) const;

  void set(const std::string& key, const std::string& value) { entries_[key] = value; }
  const std::map<std::string, std::string>& entries() const { return entries_; }

  std::string to_string() const;

 private:
  std::map<std::string, std::string> entries_;
};

std::string trim(std::string_view text);
std::vector<std::string> split(std::string_view text, char delimiter);
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace plainloop
