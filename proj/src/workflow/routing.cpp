#include "plainloop/workflow/routing.hpp"

#include <algorithm>

#include "plainloop/common/error.hpp"

namespace plainloop::workflow {

std::string_view routing_kind_name(RoutingDecision::Kind kind) {
  switch (kind) {
    case RoutingDecision::Kind::AutoApprove: return "AutoApprove";
    case RoutingDecision::Kind::Escalate: return "Escalate";
    case RoutingDecision::Kind::AdaptSignal: return "AdaptSignal";
  }
  return "?";
}

nlohmann::json RoutingDecision::to_json() const {
  return {{"kind", routing_kind_name(kind)}, {"reasons", reasons}, {"adapt_signal", adapt_signal}};
}

RoutingDecision RoutingDecision::from_json(const nlohmann::json& j) {
  RoutingDecision d;
  try {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "AutoApprove") {
      d.kind = Kind::AutoApprove;
    } else if (kind == "Escalate") {
      d.kind = Kind::Escalate;
    } else if (kind == "AdaptSignal") {
      d.kind = Kind::AdaptSignal;
    } else {
      throw Error(ErrorCode::InvalidInput, "unknown routing kind: " + kind);
    }
    d.reasons = j.at("reasons").get<std::vector<std::string>>();
    d.adapt_signal = j.at("adapt_signal").get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("malformed routing decision: ") + e.what());
  }
  return d;
}

RoutingDecision route(const RoutingContext& c) {
  RoutingDecision d;
  for (const auto& fired : c.outcome.fired) {
    if (fired.action.kind == ruledsl::Action::Kind::Escalate) d.reasons.push_back(fired.rule_id);
  }
  if (c.outcome.missing_data_action) d.reasons.push_back(kReasonMissingData);
  if (!c.cqi) {
    if (std::find(d.reasons.begin(), d.reasons.end(), kReasonMissingData) == d.reasons.end()) {
      d.reasons.push_back(kReasonMissingData);
    }
  } else if (*c.cqi < c.gamma) {
    d.reasons.push_back(kReasonCqiBelowGamma);
  }
  if (c.high_risk) d.reasons.push_back(kReasonHighRisk);
  if (c.release_review_pending) d.reasons.push_back(kReasonPolicyRelease);
  if (sample_for_review(c.item_id, c.policy)) d.reasons.push_back(kReasonGovernanceSample);

  d.adapt_signal = adaptation_due(c.trend, c.policy.trend_cycles, c.gamma);
  if (d.reasons.empty() && d.adapt_signal) {
    if (c.regenerations < c.policy.regeneration_limit) {
      d.kind = RoutingDecision::Kind::AdaptSignal;
      return d;
    }
    d.reasons.push_back(kReasonRegenerationLimit);
  }
  d.kind = d.reasons.empty() ? RoutingDecision::Kind::AutoApprove : RoutingDecision::Kind::Escalate;
  return d;
}

}  // namespace plainloop::workflow
