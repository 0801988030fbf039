#include "plainloop/workflow/governance.hpp"

#include <cmath>

#include "plainloop/common/error.hpp"
#include "plainloop/common/format.hpp"
#include "plainloop/common/hash.hpp"

namespace plainloop::workflow {

namespace {

int positive_int(const KeyValueConfig& config, const std::string& key, int fallback) {
  const auto value = config.get_number(key);
  if (!value) return fallback;
  if (*value < 1 || *value != std::floor(*value) || *value > 1e6) {
    throw Error(ErrorCode::InvalidConfig, key + " must be a positive integer");
  }
  return static_cast<int>(*value);
}

}  // namespace

GovernancePolicy GovernancePolicy::from_config(const KeyValueConfig& config) {
  GovernancePolicy policy;
  policy.sampling_rate = config.number_or("governance.sampling_rate", policy.sampling_rate);
  for (const auto& domain : config.get_list("governance.high_risk_domains")) {
    policy.high_risk_domains.insert(domain);
  }
  policy.mandatory_review_after_release =
      config.get_bool("governance.mandatory_review_after_release").value_or(false);
  if (const auto seed = config.get("governance.rng_seed")) {
    try {
      std::size_t used = 0;
      policy.rng_seed = std::stoull(*seed, &used);
      if (used != seed->size() || seed->front() == '-') throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidConfig, "governance.rng_seed must be an unsigned integer");
    }
  }
  policy.regeneration_limit = positive_int(config, "workflow.regeneration_limit", policy.regeneration_limit);
  policy.trend_cycles = positive_int(config, "workflow.trend_cycles", policy.trend_cycles);
  policy.trend_window = positive_int(config, "workflow.trend_window", policy.trend_window);
  policy.validate();
  return policy;
}

void GovernancePolicy::validate() const {
  if (!(sampling_rate >= kMinSamplingRate && sampling_rate <= kMaxSamplingRate)) {
    throw Error(ErrorCode::InvalidConfig, "governance.sampling_rate " + format_number(sampling_rate) +
                                              " outside [0.05, 0.10]");
  }
  if (regeneration_limit < 1 || trend_cycles < 1 || trend_window < 1) {
    throw Error(ErrorCode::InvalidConfig, "workflow limits must be positive");
  }
}

bool sample_for_review(const std::string& item_id, const GovernancePolicy& policy) {
  return uniform_hash(policy.rng_seed, item_id) < policy.sampling_rate;
}

}  // namespace plainloop::workflow
