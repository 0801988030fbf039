#include "plainloop/metrics/metric_config.hpp"

#include "plainloop/common/error.hpp"

namespace plainloop::metrics {

namespace {

ProviderSpec provider_from(const KeyValueConfig& config, const std::string& prefix) {
  ProviderSpec spec;
  const auto kind = config.get_or(prefix + ".provider", "surrogate");
  if (kind == "surrogate") {
    spec.kind = ProviderSpec::Kind::Surrogate;
  } else if (kind == "http") {
    spec.kind = ProviderSpec::Kind::Http;
    spec.url = config.get_or(prefix + ".url", "");
    if (spec.url.empty()) throw Error(ErrorCode::InvalidConfig, prefix + ".url is required for http");
  } else if (kind == "none") {
    spec.kind = ProviderSpec::Kind::None;
  } else {
    throw Error(ErrorCode::InvalidConfig, prefix + ".provider: unknown provider '" + kind + "'");
  }
  spec.timeout_ms = static_cast<int>(config.number_or(prefix + ".timeout_ms", spec.timeout_ms));
  return spec;
}

}  // namespace

std::string resolve_path(const std::string& base_dir, const std::string& path) {
  if (path.empty() || path.front() == '/' || base_dir.empty() || base_dir == ".") return path;
  return base_dir + "/" + path;
}

MetricConfig MetricConfig::from_config(const KeyValueConfig& config, const std::string& base_dir) {
  MetricConfig out;
  out.language = parse_language(config.get_or("metrics.readability.language", "es"));
  out.fidelity = provider_from(config, "metrics.fidelity");
  out.alignscore = provider_from(config, "metrics.alignscore");
  if (const auto file = config.get("metrics.synonyms.file")) {
    out.synonyms = SynonymTable::load_tsv(resolve_path(base_dir, *file));
  }
  const std::string prefix = "metrics.terminology.";
  for (const auto& [key, value] : config.with_prefix(prefix)) {
    out.terminology[key.substr(prefix.size())] = config.get_list(key);
  }
  const double max_tokens = config.number_or("metrics.structure.max_sentence_tokens",
                                             static_cast<double>(out.max_sentence_tokens));
  if (max_tokens < 1) throw Error(ErrorCode::InvalidConfig, "max_sentence_tokens must be >= 1");
  out.max_sentence_tokens = static_cast<std::size_t>(max_tokens);
  return out;
}

const std::vector<std::string>* MetricConfig::terms_for(const std::string& domain) const {
  if (const auto it = terminology.find(domain); it != terminology.end()) return &it->second;
  if (const auto it = terminology.find("*"); it != terminology.end()) return &it->second;
  return nullptr;
}

}  // namespace plainloop::metrics
