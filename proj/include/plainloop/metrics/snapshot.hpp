#pragma once

#include <json.hpp>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "plainloop/metrics/fidelity.hpp"
#include "plainloop/metrics/metric_config.hpp"
#include "plainloop/metrics/sari.hpp"
#include "plainloop/metrics/text_unit.hpp"

namespace plainloop::metrics {

// Metric values for one work item. A metric that could not be computed is
// absent, never zero; provider_ids says why.
struct MetricSnapshot {
  std::optional<double> readability;         // [0,100]
  std::optional<double> semantic_fidelity;   // [0,1], the "bertscore" key
  std::optional<SariScore> sari;             // only with references
  std::optional<double> sari_deletions;      // [0,1]
  std::optional<double> structural_clarity;  // [0,1]
  std::map<std::string, double> extra;       // alignscore, samsa, dsari, ...
  std::map<std::string, std::string> provider_ids;

  // Flat key -> value view consumed by the rule engine.
  std::map<std::string, double> bindings() const;

  nlohmann::json to_json() const;
  static MetricSnapshot from_json(const nlohmann::json& j);

  bool operator==(const MetricSnapshot&) const = default;
};

// Keys the engine itself can produce.
const std::set<std::string>& computed_metric_keys();
// Keys accepted only from outside (no in-process implementation).
const std::set<std::string>& external_metric_keys();
// Lowercase identifier: [a-z][a-z0-9_]*
bool is_metric_key(std::string_view key);

struct SnapshotInput {
  std::string source;
  std::string output;
  Language language = Language::es;
  std::string domain;
  std::vector<std::string> references;
  // Externally supplied scores (samsa, dsari, ...). Keys must be lowercase
  // identifiers and must not shadow computed keys.
  std::map<std::string, double> extra;
};

class MetricEngine {
 public:
  explicit MetricEngine(MetricConfig config);
  // Explicit providers; nullptr disables the metric.
  MetricEngine(MetricConfig config, std::shared_ptr<const FidelityProvider> fidelity,
               std::shared_ptr<const FidelityProvider> alignscore);

  const MetricConfig& config() const { return config_; }

  // Throws EmptyText only when both texts are empty; InvalidInput for bad
  // extra keys or values.
  MetricSnapshot snapshot(const SnapshotInput& input) const;

 private:
  MetricConfig config_;
  std::shared_ptr<const FidelityProvider> fidelity_;
  std::shared_ptr<const FidelityProvider> alignscore_;
};

std::shared_ptr<const FidelityProvider> make_provider(const ProviderSpec& spec,
                                                      const SynonymTable& synonyms,
                                                      const std::string& name);

}  // namespace plainloop::metrics
