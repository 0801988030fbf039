#pragma once

#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <vector>

#include "plainloop/metrics/text_unit.hpp"

namespace httplib {
class Client;
}

namespace plainloop::metrics {

// Groups of interchangeable phrases ("trámites" <-> "trámites
// administrativos"). Pairs are merged transitively, so the relation is
// always symmetric.
class SynonymTable {
 public:
  void add_pair(const std::string& a, const std::string& b);
  // One pair per line, tab separated; '#' comments. Further columns ignored.
  static SynonymTable parse_tsv(std::string_view text);
  static SynonymTable load_tsv(const std::string& path);

  bool empty() const { return group_of_.empty(); }
  std::size_t size() const { return group_of_.size(); }

  // Rewrites every longest-matching phrase to its group's canonical token.
  std::vector<std::string> canonicalize(const std::vector<std::string>& lower_tokens) const;

 private:
  std::string find(const std::string& phrase) const;

  // phrase (space-joined lowercase tokens) -> group representative
  std::map<std::string, std::string> group_of_;
  std::size_t longest_ = 0;
};

bool is_stopword(const std::string& lower_token, Language language);

class FidelityProvider {
 public:
  virtual ~FidelityProvider() = default;
  // Identifier plus version, recorded in MetricSnapshot::provider_ids.
  virtual std::string id() const = 0;
  // Score in [0,1]. Throws ProviderUnavailable when no score can be given.
  virtual double score(const TextUnit& source, const TextUnit& output) const = 0;
};

// Content-word overlap F1 after synonym canonicalization. Two texts with
// no content words score 1.0 together and 0.0 against anything else.
class SurrogateFidelity final : public FidelityProvider {
 public:
  explicit SurrogateFidelity(SynonymTable synonyms = {});

  std::string id() const override { return "surrogate-overlap-f1@1"; }
  double score(const TextUnit& source, const TextUnit& output) const override;

 private:
  std::multiset<std::string> content_words(const TextUnit& unit) const;

  SynonymTable synonyms_;
};

// POST {"source": ..., "output": ...} -> {"score": number in [0,1]}.
class HttpFidelityProvider final : public FidelityProvider {
 public:
  HttpFidelityProvider(std::string url, int timeout_ms, std::string name = "http");
  ~HttpFidelityProvider() override;

  std::string id() const override;
  double score(const TextUnit& source, const TextUnit& output) const override;
  // Aborts in-flight requests; they fail with ProviderUnavailable.
  void cancel();

 private:
  std::string host_;
  std::string path_;
  int timeout_ms_;
  std::string name_;
  mutable std::mutex mutex_;
  mutable std::set<httplib::Client*> active_;
  std::atomic<bool> cancelled_{false};
};

// Splits "http://host:port/path" into ("http://host:port", "/path").
std::pair<std::string, std::string> split_url(const std::string& url);

}  // namespace plainloop::metrics
