#pragma once

#include <map>
#include <string>

#include "plainloop/common/kv_config.hpp"

namespace plainloop::kpi {

struct CqiWeights {
  double readability = 0.4;
  double fidelity = 0.3;
  double structure = 0.3;
};

enum class BaselineMode {
  PerUser,  // each user's own pretest score
  Cohort,   // one configured cohort baseline
};

// Keys (all optional, defaults below):
//   kpi.gamma, kpi.tau, kpi.alpha, kpi.beta, kpi.delta, kpi.epsilon
//   kpi.weights = 0.4, 0.3, 0.3      (readability, fidelity, structure)
//   kpi.theta_profile.<profile> = <number>
//   kpi.baseline = per_user | cohort
//   kpi.baseline_value = <number>     (required for cohort)
//   kpi.<name>.note = <text>          (provenance)
struct KpiConfig {
  double gamma = 0.75;
  double tau = 0.5;
  double alpha = 0.5;
  double beta = 0.8;
  double delta = 0.1;
  double epsilon = 0.02;
  CqiWeights weights;
  std::map<std::string, double> theta_profile = {{"older_adults", 0.834}, {"id", 0.924}};
  BaselineMode baseline = BaselineMode::PerUser;
  double baseline_value = 0.0;
  // parameter name -> where the value comes from
  std::map<std::string, std::string> provenance = default_provenance();

  static std::map<std::string, std::string> default_provenance();
  static KpiConfig from_config(const KeyValueConfig& config);

  // Throws InvalidConfig: weights negative or not summing to 1 (1e-9),
  // alpha > beta, thresholds outside [0,1].
  void validate() const;
};

}  // namespace plainloop::kpi
