#pragma once

#include <map>
#include <string>
#include <vector>

#include "plainloop/common/kv_config.hpp"
#include "plainloop/metrics/fidelity.hpp"
#include "plainloop/metrics/structure.hpp"
#include "plainloop/metrics/text_unit.hpp"

namespace plainloop::metrics {

struct ProviderSpec {
  enum class Kind { Surrogate, Http, None };
  Kind kind = Kind::Surrogate;
  std::string url;
  int timeout_ms = 2000;
};

// Keys (all optional):
//   metrics.readability.language       = es | en
//   metrics.fidelity.provider          = surrogate | http | none
//   metrics.fidelity.url / .timeout_ms
//   metrics.alignscore.provider        = surrogate | http | none
//   metrics.alignscore.url / .timeout_ms
//   metrics.synonyms.file              = path to a two-column TSV
//   metrics.terminology.<domain>       = comma separated protected terms
//   metrics.structure.max_sentence_tokens = 20
struct MetricConfig {
  Language language = Language::es;
  ProviderSpec fidelity;
  ProviderSpec alignscore;
  SynonymTable synonyms;
  // domain -> protected terms; "*" applies to every domain
  std::map<std::string, std::vector<std::string>> terminology;
  std::size_t max_sentence_tokens = kDefaultMaxSentenceTokens;

  // Relative file paths resolve against `base_dir`.
  static MetricConfig from_config(const KeyValueConfig& config, const std::string& base_dir = ".");

  // Protected terms for `domain`, or nullptr when none are configured.
  const std::vector<std::string>* terms_for(const std::string& domain) const;
};

std::string resolve_path(const std::string& base_dir, const std::string& path);

}  // namespace plainloop::metrics
