#include "plainloop/common/error.hpp"
#include "plainloop/kpi/kpi_config.hpp"

#include <cmath>

namespace plainloop::kpi {

std::map<std::string, std::string> KpiConfig::default_provenance() {
  const std::string placeholder = "calibration placeholder, not a reported value";
  return {{"gamma", placeholder},
          {"tau", placeholder},
          {"alpha", placeholder},
          {"beta", placeholder},
          {"delta", placeholder},
          {"epsilon", placeholder},
          {"weights", "initial operational weighting (0.4, 0.3, 0.3)"},
          {"theta_profile.older_adults", "synonym judgments, some + all accepted: 0.589 + 0.245"},
          {"theta_profile.id", "synonym judgments, some + all accepted: 0.675 + 0.249"}};
}

KpiConfig KpiConfig::from_config(const KeyValueConfig& config) {
  KpiConfig c;
  const auto number = [&](const char* name, double& slot) {
    const auto key = std::string("kpi.") + name;
    if (const auto v = config.get_number(key)) {
      slot = *v;
      c.provenance[name] = "configured";
    }
  };
  number("gamma", c.gamma);
  number("tau", c.tau);
  number("alpha", c.alpha);
  number("beta", c.beta);
  number("delta", c.delta);
  number("epsilon", c.epsilon);

  const auto weights = config.get_list("kpi.weights");
  if (!weights.empty()) {
    if (weights.size() != 3) {
      throw Error(ErrorCode::InvalidConfig, "kpi.weights needs three values (readability, fidelity, structure)");
    }
    KeyValueConfig tmp;
    tmp.set("w0", weights[0]);
    tmp.set("w1", weights[1]);
    tmp.set("w2", weights[2]);
    c.weights = {*tmp.get_number("w0"), *tmp.get_number("w1"), *tmp.get_number("w2")};
    c.provenance["weights"] = "configured";
  }
  for (const auto& [key, value] : config.with_prefix("kpi.theta_profile.")) {
    const auto profile = key.substr(std::string("kpi.theta_profile.").size());
    if (profile.empty() || profile.find('.') != std::string::npos) {
      throw Error(ErrorCode::InvalidConfig, "'" + key + "': expected kpi.theta_profile.<profile>");
    }
    c.theta_profile[profile] = *config.get_number(key);
    c.provenance["theta_profile." + profile] = "configured";
  }
  const auto mode = config.get_or("kpi.baseline", "per_user");
  if (mode == "per_user") {
    c.baseline = BaselineMode::PerUser;
  } else if (mode == "cohort") {
    c.baseline = BaselineMode::Cohort;
    const auto value = config.get_number("kpi.baseline_value");
    if (!value) throw Error(ErrorCode::InvalidConfig, "kpi.baseline = cohort needs kpi.baseline_value");
    c.baseline_value = *value;
  } else {
    throw Error(ErrorCode::InvalidConfig, "kpi.baseline must be per_user or cohort");
  }
  for (const auto& [key, value] : config.with_prefix("kpi.")) {
    const auto suffix = std::string(".note");
    if (key.size() > suffix.size() && key.compare(key.size() - suffix.size(), suffix.size(), suffix) == 0) {
      c.provenance[key.substr(4, key.size() - 4 - suffix.size())] = value;
    }
  }
  c.validate();
  return c;
}

void KpiConfig::validate() const {
  const auto in_unit = [](const char* name, double v) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(ErrorCode::InvalidConfig, std::string(name) + " must lie in [0, 1]");
    }
  };
  for (const double w : {weights.readability, weights.fidelity, weights.structure}) {
    if (!(w >= 0.0)) throw Error(ErrorCode::InvalidConfig, "CQI weights must be nonnegative");
  }
  if (std::fabs(weights.readability + weights.fidelity + weights.structure - 1.0) > 1e-9) {
    throw Error(ErrorCode::InvalidConfig, "CQI weights must sum to 1");
  }
  in_unit("gamma", gamma);
  in_unit("tau", tau);
  in_unit("alpha", alpha);
  in_unit("beta", beta);
  in_unit("delta", delta);
  in_unit("epsilon", epsilon);
  for (const auto& [profile, theta] : theta_profile) in_unit(("theta_profile." + profile).c_str(), theta);
  if (alpha > beta) throw Error(ErrorCode::InvalidConfig, "alpha must not exceed beta");
}

}  // namespace plainloop::kpi
