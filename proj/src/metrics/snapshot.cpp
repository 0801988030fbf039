#include "plainloop/metrics/snapshot.hpp"

#include <cmath>

#include "plainloop/common/error.hpp"
#include "plainloop/metrics/readability.hpp"
#include "plainloop/metrics/structure.hpp"

namespace plainloop::metrics {

const std::set<std::string>& computed_metric_keys() {
  static const std::set<std::string> keys = {
      "readability_fh", "readability",        "semantic_fidelity", "bertscore",
      "alignscore",     "sari",               "sari_add",          "sari_keep",
      "sari_del",       "sari_deletions",     "structural_clarity", "numeric_integrity",
      "terminology_drift"};
  return keys;
}

const std::set<std::string>& external_metric_keys() {
  static const std::set<std::string> keys = {"samsa", "dsari", "lens"};
  return keys;
}

bool is_metric_key(std::string_view key) {
  if (key.empty() || key.front() < 'a' || key.front() > 'z') return false;
  for (const char c : key) {
    if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_')) return false;
  }
  return true;
}

std::map<std::string, double> MetricSnapshot::bindings() const {
  std::map<std::string, double> out(extra.begin(), extra.end());
  if (readability) {
    out["readability_fh"] = *readability;
    out["readability"] = *readability;
  }
  if (semantic_fidelity) {
    out["semantic_fidelity"] = *semantic_fidelity;
    out["bertscore"] = *semantic_fidelity;
  }
  if (sari) {
    out["sari"] = sari->overall;
    out["sari_add"] = sari->add_f1;
    out["sari_keep"] = sari->keep_f1;
    out["sari_del"] = sari->del_precision;
  }
  if (sari_deletions) out["sari_deletions"] = *sari_deletions;
  if (structural_clarity) out["structural_clarity"] = *structural_clarity;
  return out;
}

nlohmann::json MetricSnapshot::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  const auto put = [&](const char* key, const std::optional<double>& value) {
    if (value) j[key] = *value;
  };
  put("readability", readability);
  put("semantic_fidelity", semantic_fidelity);
  put("sari_deletions", sari_deletions);
  put("structural_clarity", structural_clarity);
  if (sari) {
    j["sari"] = {{"add_f1", sari->add_f1},
                 {"keep_f1", sari->keep_f1},
                 {"del_precision", sari->del_precision},
                 {"overall", sari->overall},
                 {"deletions_fraction", sari->deletions_fraction}};
  }
  j["extra"] = extra;
  j["provider_ids"] = provider_ids;
  return j;
}

MetricSnapshot MetricSnapshot::from_json(const nlohmann::json& j) {
  MetricSnapshot s;
  const auto get = [&](const char* key) -> std::optional<double> {
    if (j.contains(key)) return j.at(key).get<double>();
    return std::nullopt;
  };
  s.readability = get("readability");
  s.semantic_fidelity = get("semantic_fidelity");
  s.sari_deletions = get("sari_deletions");
  s.structural_clarity = get("structural_clarity");
  if (j.contains("sari")) {
    const auto& q = j.at("sari");
    SariScore score;
    score.add_f1 = q.at("add_f1").get<double>();
    score.keep_f1 = q.at("keep_f1").get<double>();
    score.del_precision = q.at("del_precision").get<double>();
    score.overall = q.at("overall").get<double>();
    score.deletions_fraction = q.at("deletions_fraction").get<double>();
    s.sari = score;
  }
  if (j.contains("extra")) s.extra = j.at("extra").get<std::map<std::string, double>>();
  if (j.contains("provider_ids")) {
    s.provider_ids = j.at("provider_ids").get<std::map<std::string, std::string>>();
  }
  return s;
}

std::shared_ptr<const FidelityProvider> make_provider(const ProviderSpec& spec,
                                                      const SynonymTable& synonyms,
                                                      const std::string& name) {
  switch (spec.kind) {
    case ProviderSpec::Kind::Surrogate: return std::make_shared<SurrogateFidelity>(synonyms);
    case ProviderSpec::Kind::Http:
      return std::make_shared<HttpFidelityProvider>(spec.url, spec.timeout_ms, name);
    case ProviderSpec::Kind::None: return nullptr;
  }
  return nullptr;
}

MetricEngine::MetricEngine(MetricConfig config)
    : config_(std::move(config)),
      fidelity_(make_provider(config_.fidelity, config_.synonyms, "bertscore-http")),
      alignscore_(make_provider(config_.alignscore, config_.synonyms, "alignscore-http")) {}

MetricEngine::MetricEngine(MetricConfig config, std::shared_ptr<const FidelityProvider> fidelity,
                           std::shared_ptr<const FidelityProvider> alignscore)
    : config_(std::move(config)), fidelity_(std::move(fidelity)), alignscore_(std::move(alignscore)) {}

namespace {

void run_provider(const FidelityProvider* provider, const TextUnit& source, const TextUnit& output,
                  const std::string& key, MetricSnapshot& snap, std::optional<double>* slot) {
  if (provider == nullptr) {
    snap.provider_ids[key] = "none (not configured)";
    return;
  }
  try {
    const double value = provider->score(source, output);
    if (slot != nullptr) {
      *slot = value;
    } else {
      snap.extra[key] = value;
    }
    snap.provider_ids[key] = provider->id();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ProviderUnavailable) throw;
    snap.provider_ids[key] = provider->id() + " (unavailable: " + e.what() + ")";
  }
}

}  // namespace

MetricSnapshot MetricEngine::snapshot(const SnapshotInput& input) const {
  const auto source = segment(input.source, input.language);
  const auto output = segment(input.output, input.language);
  if (source.empty() && output.empty()) {
    throw Error(ErrorCode::EmptyText, "source and output are both empty");
  }

  MetricSnapshot snap;
  for (const auto& [key, value] : input.extra) {
    if (!is_metric_key(key)) throw Error(ErrorCode::InvalidInput, "bad metric key '" + key + "'");
    if (computed_metric_keys().count(key) != 0) {
      throw Error(ErrorCode::InvalidInput, "'" + key + "' is computed and cannot be supplied");
    }
    if (!std::isfinite(value)) {
      throw Error(ErrorCode::InvalidInput, "'" + key + "' must be a finite number");
    }
    snap.extra[key] = value;
    snap.provider_ids[key] = "external";
  }

  if (!output.empty()) {
    snap.readability = readability(output);
    snap.provider_ids["readability"] =
        input.language == Language::es ? "fernandez-huerta@1" : "flesch-reading-ease@1";
  } else {
    snap.provider_ids["readability"] = "unavailable: empty output";
  }

  run_provider(fidelity_.get(), source, output, "semantic_fidelity", snap, &snap.semantic_fidelity);
  run_provider(alignscore_.get(), source, output, "alignscore", snap, nullptr);

  const auto source_tokens = source.lower_tokens();
  const auto output_tokens = output.lower_tokens();
  snap.sari_deletions = deletions_fraction(source_tokens, output_tokens);
  if (!input.references.empty()) {
    std::vector<std::vector<std::string>> refs;
    for (const auto& ref : input.references) {
      refs.push_back(segment(ref, input.language).lower_tokens());
    }
    snap.sari = sari(source_tokens, output_tokens, refs);
    snap.provider_ids["sari"] = "sari-ngram4@1";
  } else {
    snap.provider_ids["sari"] = "unavailable: no references";
  }

  snap.structural_clarity = structural_clarity(output, config_.max_sentence_tokens);
  snap.provider_ids["structural_clarity"] =
      "sentence-length<=" + std::to_string(config_.max_sentence_tokens) + "@1";
  snap.extra["numeric_integrity"] = numeric_integrity(source, output);
  snap.provider_ids["numeric_integrity"] = "numeric-tokens@1";
  if (const auto* terms = config_.terms_for(input.domain)) {
    snap.extra["terminology_drift"] = terminology_drift(source, output, *terms);
    snap.provider_ids["terminology_drift"] = "protected-terms@1";
  }
  return snap;
}

}  // namespace plainloop::metrics
