#pragma once

#include <json.hpp>

#include "plainloop/ruledsl/evaluate.hpp"

namespace plainloop::ruledsl {

nlohmann::json outcome_to_json(const RuleOutcome& outcome);
RuleOutcome outcome_from_json(const nlohmann::json& j);

// One rationale line per rule, in rule order.
std::vector<std::string> rationale_lines(const RuleOutcome& outcome);

}  // namespace plainloop::ruledsl
