#include "plainloop/metrics/fidelity.hpp"

#include <httplib.h>

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <unordered_set>

#include "plainloop/common/error.hpp"
#include "plainloop/common/kv_config.hpp"
#include "plainloop/common/utf8.hpp"

namespace plainloop::metrics {

namespace {

std::vector<std::string> phrase_tokens(const std::string& phrase) {
  return segment(phrase, Language::es).lower_tokens();
}

std::string join(const std::vector<std::string>& tokens, std::size_t from, std::size_t count) {
  std::string out;
  for (std::size_t k = 0; k < count; ++k) {
    if (k) out.push_back(' ');
    out += tokens[from + k];
  }
  return out;
}

const std::unordered_set<std::string>& spanish_stopwords() {
  static const std::unordered_set<std::string> words = {
      "a",   "al",    "ante",  "con",   "de",  "del", "desde", "e",    "el",  "ella",
      "ellas", "ello", "ellos", "en",   "entre", "es", "la",   "las",  "le",  "les",
      "lo",  "los",   "ni",    "o",     "para", "pero", "por", "que",  "se",  "sin",
      "su",  "sus",   "u",     "un",    "una", "unas", "uno",  "unos", "y",   "\xC3\xA9l"};
  return words;
}

const std::unordered_set<std::string>& english_stopwords() {
  static const std::unordered_set<std::string> words = {
      "a",  "an",  "and", "are", "as",   "at",   "be",   "by",   "for", "from", "in",
      "is", "it",  "its", "of",  "on",   "or",   "that", "the",  "their", "them",
      "they", "this", "to", "was", "were", "with"};
  return words;
}

}  // namespace

void SynonymTable::add_pair(const std::string& a, const std::string& b) {
  const auto key_a = join(phrase_tokens(a), 0, phrase_tokens(a).size());
  const auto key_b = join(phrase_tokens(b), 0, phrase_tokens(b).size());
  if (key_a.empty() || key_b.empty()) {
    throw Error(ErrorCode::InvalidConfig, "empty synonym phrase");
  }
  for (const auto& key : {key_a, key_b}) {
    if (group_of_.count(key) == 0) group_of_[key] = key;
    longest_ = std::max<std::size_t>(longest_, std::count(key.begin(), key.end(), ' ') + 1);
  }
  const auto root_a = find(key_a);
  const auto root_b = find(key_b);
  if (root_a == root_b) return;
  // The lexicographically smaller root represents the merged group.
  const auto& keep = std::min(root_a, root_b);
  const auto& drop = std::max(root_a, root_b);
  for (auto& [phrase, root] : group_of_) {
    if (root == drop) root = keep;
  }
}

std::string SynonymTable::find(const std::string& phrase) const {
  const auto it = group_of_.find(phrase);
  return it == group_of_.end() ? std::string() : it->second;
}

SynonymTable SynonymTable::parse_tsv(std::string_view text) {
  SynonymTable table;
  int line_no = 0;
  for (const auto& raw : split(text, '\n')) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto columns = split(line, '\t');
    if (columns.size() < 2) {
      throw Error(ErrorCode::InvalidConfig,
                  "synonyms line " + std::to_string(line_no) + ": expected two tab-separated columns");
    }
    table.add_pair(trim(columns[0]), trim(columns[1]));
  }
  return table;
}

SynonymTable SynonymTable::load_tsv(const std::string& path) { return parse_tsv(read_file(path)); }

std::vector<std::string> SynonymTable::canonicalize(const std::vector<std::string>& tokens) const {
  if (group_of_.empty()) return tokens;
  std::vector<std::string> out;
  out.reserve(tokens.size());
  std::size_t i = 0;
  while (i < tokens.size()) {
    bool matched = false;
    for (std::size_t len = std::min(longest_, tokens.size() - i); len > 0; --len) {
      const auto root = find(join(tokens, i, len));
      if (!root.empty()) {
        out.push_back("\xE2\x89\xA1" + root);  // "≡" marks a synonym group
        i += len;
        matched = true;
        break;
      }
    }
    if (!matched) out.push_back(tokens[i++]);
  }
  return out;
}

bool is_stopword(const std::string& lower_token, Language language) {
  const auto& words = language == Language::es ? spanish_stopwords() : english_stopwords();
  return words.count(lower_token) != 0;
}

SurrogateFidelity::SurrogateFidelity(SynonymTable synonyms) : synonyms_(std::move(synonyms)) {}

std::multiset<std::string> SurrogateFidelity::content_words(const TextUnit& unit) const {
  std::multiset<std::string> words;
  for (auto& token : synonyms_.canonicalize(unit.lower_tokens())) {
    if (!is_stopword(token, unit.language())) words.insert(std::move(token));
  }
  return words;
}

double SurrogateFidelity::score(const TextUnit& source, const TextUnit& output) const {
  const auto a = content_words(source);
  const auto b = content_words(output);
  if (a.empty() && b.empty()) return 1.0;
  if (a.empty() || b.empty()) return 0.0;
  std::vector<std::string> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
  return 2.0 * static_cast<double>(common.size()) / static_cast<double>(a.size() + b.size());
}

std::pair<std::string, std::string> split_url(const std::string& url) {
  const auto scheme = url.find("://");
  const auto path_start = url.find('/', scheme == std::string::npos ? 0 : scheme + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

HttpFidelityProvider::HttpFidelityProvider(std::string url, int timeout_ms, std::string name)
    : timeout_ms_(timeout_ms), name_(std::move(name)) {
  std::tie(host_, path_) = split_url(url);
}

HttpFidelityProvider::~HttpFidelityProvider() = default;

std::string HttpFidelityProvider::id() const { return name_ + "@" + host_ + path_; }

void HttpFidelityProvider::cancel() {
  cancelled_ = true;
  std::lock_guard lock(mutex_);
  for (auto* client : active_) client->stop();
}

double HttpFidelityProvider::score(const TextUnit& source, const TextUnit& output) const {
  if (cancelled_) throw Error(ErrorCode::ProviderUnavailable, id() + " cancelled");
  httplib::Client client(host_);
  const auto seconds = timeout_ms_ / 1000;
  const auto micros = (timeout_ms_ % 1000) * 1000;
  client.set_connection_timeout(seconds, micros);
  client.set_read_timeout(seconds, micros);
  client.set_write_timeout(seconds, micros);
  {
    std::lock_guard lock(mutex_);
    active_.insert(&client);
  }
  const nlohmann::json body = {{"source", source.text()}, {"output", output.text()}};
  auto response = client.Post(path_, body.dump(), "application/json");
  {
    std::lock_guard lock(mutex_);
    active_.erase(&client);
  }
  if (!response) {
    throw Error(ErrorCode::ProviderUnavailable,
                id() + ": " + httplib::to_string(response.error()));
  }
  if (response->status != 200) {
    throw Error(ErrorCode::ProviderUnavailable, id() + ": HTTP " + std::to_string(response->status));
  }
  const auto parsed = nlohmann::json::parse(response->body, nullptr, false);
  if (parsed.is_discarded() || !parsed.is_object() || !parsed.contains("score") ||
      !parsed["score"].is_number()) {
    throw Error(ErrorCode::ProviderUnavailable, id() + ": malformed response");
  }
  const double value = parsed["score"].get<double>();
  if (!std::isfinite(value) || value < 0.0 || value > 1.0) {
    throw Error(ErrorCode::ProviderUnavailable, id() + ": score out of range");
  }
  return value;
}

}  // namespace plainloop::metrics
