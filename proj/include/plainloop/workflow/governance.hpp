#pragma once

#include <cstdint>
#include <set>
#include <string>

#include "plainloop/common/kv_config.hpp"

namespace plainloop::workflow {

inline constexpr double kMinSamplingRate = 0.05;
inline constexpr double kMaxSamplingRate = 0.10;

// Keys:
//   governance.sampling_rate = 0.07            (required range [0.05, 0.10])
//   governance.high_risk_domains = health_dosage, legal_warning
//   governance.mandatory_review_after_release = true | false
//   governance.rng_seed = <unsigned integer>
//   workflow.regeneration_limit = 3
//   workflow.trend_cycles = 3
//   workflow.trend_window = 50
struct GovernancePolicy {
  double sampling_rate = 0.07;
  std::set<std::string> high_risk_domains;
  bool mandatory_review_after_release = false;
  std::uint64_t rng_seed = 0;
  int regeneration_limit = 3;
  int trend_cycles = 3;
  int trend_window = 50;

  // Throws InvalidConfig for rates outside [0.05, 0.10] and non-positive
  // limits.
  static GovernancePolicy from_config(const KeyValueConfig& config);
  void validate() const;

  bool is_high_risk(const std::string& domain) const { return high_risk_domains.count(domain) != 0; }
  bool operator==(const GovernancePolicy&) const = default;
};

// Deterministic draw: uniform_hash(rng_seed, item_id) < sampling_rate. Does
// not validate the rate, so tests can use 0 and 1.
bool sample_for_review(const std::string& item_id, const GovernancePolicy& policy);

}  // namespace plainloop::workflow
