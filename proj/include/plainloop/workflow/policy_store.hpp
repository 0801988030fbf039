#pragma once

#include <cstdint>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "plainloop/common/kv_config.hpp"
#include "plainloop/kpi/kpi_config.hpp"
#include "plainloop/ruledsl/ast.hpp"
#include "plainloop/ruledsl/evaluate.hpp"
#include "plainloop/ruledsl/thresholds.hpp"
#include "plainloop/workflow/generator.hpp"
#include "plainloop/workflow/governance.hpp"

namespace plainloop::workflow {

// Everything that decides routing. Immutable once published; every change
// produces a new bundle with a higher version.
struct PolicyBundle {
  std::uint64_t version = 1;
  ruledsl::RuleSet rules;
  ruledsl::ThresholdTable thresholds;
  kpi::KpiConfig kpi;
  GovernancePolicy governance;
  Glossary glossary;
  std::vector<std::string> constraints;  // prompt constraints for generation
  ruledsl::MissingDataPolicy missing_data = ruledsl::MissingDataPolicy::Escalate;

  std::string version_string() const { return std::to_string(version); }
  nlohmann::json describe() const;

  // Keys besides the kpi, governance and thresholds sections:
  //   policy.rules = <path to .eca>
  //   policy.glossary = <path to TSV>
  //   policy.constraints = a, b
  //   policy.missing_data = escalate | ignore
  // Relative paths resolve against base_dir.
  static PolicyBundle from_config(const KeyValueConfig& config, const std::string& base_dir = ".");
};

struct ThresholdSetting {
  std::string profile;
  std::string domain;
  std::string symbol;
  double value = 0.0;
  std::string note;

  bool operator==(const ThresholdSetting&) const = default;
};

struct PolicyChange {
  std::optional<std::string> rules_text;
  std::vector<ThresholdSetting> thresholds;
  std::optional<GovernancePolicy> governance;
  std::optional<kpi::KpiConfig> kpi;
  std::vector<GlossaryEntry> glossary_additions;
  std::vector<std::string> constraint_additions;
  std::string reason;

  bool empty() const;
  nlohmann::json to_json() const;
  // Accepts {"rules": text, "thresholds": [{profile, domain, symbol, value, note}],
  // "governance": {sampling_rate, high_risk_domains, ...}, "glossary_additions":
  // [{term, substitute, note}], "constraint_additions": [...], "reason": text}.
  static PolicyChange from_json(const nlohmann::json& j);
};

// New bundle with version + 1. Throws SyntaxError / InvalidConfig when the
// result would be invalid, InvalidInput for an empty change.
PolicyBundle apply_change(const PolicyBundle& current, const PolicyChange& change);

}  // namespace plainloop::workflow
