#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "plainloop/ruledsl/evaluate.hpp"
#include "plainloop/workflow/governance.hpp"
#include "plainloop/workflow/trends.hpp"

namespace plainloop::workflow {

// Reason identifiers besides fired rule ids.
inline constexpr const char* kReasonMissingData = "missing_data";
inline constexpr const char* kReasonCqiBelowGamma = "cqi_below_gamma";
inline constexpr const char* kReasonHighRisk = "high_risk";
inline constexpr const char* kReasonPolicyRelease = "policy_release";
inline constexpr const char* kReasonGovernanceSample = "governance_sample";
inline constexpr const char* kReasonRegenerationLimit = "regeneration_limit";

struct RoutingContext {
  std::string item_id;
  bool high_risk = false;
  ruledsl::RuleOutcome outcome;
  std::optional<double> cqi;  // absent when a component is missing
  double gamma = 0.75;
  GovernancePolicy policy;
  bool release_review_pending = false;
  TrendSnapshot trend;
  int regenerations = 0;
};

struct RoutingDecision {
  enum class Kind { AutoApprove, Escalate, AdaptSignal };
  Kind kind = Kind::AutoApprove;
  std::vector<std::string> reasons;  // non-empty iff kind == Escalate
  bool adapt_signal = false;         // trends hold, whatever the kind

  nlohmann::json to_json() const;
  static RoutingDecision from_json(const nlohmann::json& j);
  bool operator==(const RoutingDecision&) const = default;
};

std::string_view routing_kind_name(RoutingDecision::Kind kind);

// Pure. Escalates on any escalating fired rule, missing data under the
// escalate policy, missing or low CQI, high-risk domain, a pending
// post-release review, or a governance sample. Without any of those, bad
// quality trends send the item to adaptation instead of auto-approval,
// until the regeneration limit forces review.
RoutingDecision route(const RoutingContext& context);

}  // namespace plainloop::workflow
