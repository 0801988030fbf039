#pragma once

#include <optional>
#include <string>
#include <vector>

#include "plainloop/adaptation/consolidate.hpp"
#include "plainloop/kpi/signals.hpp"
#include "plainloop/workflow/policy_store.hpp"

namespace plainloop::adaptation {

struct RecalibrateOptions {
  std::size_t min_observations = 30;  // n_min per profile
  double margin = 0.05;
};

// theta_profile proposal for one profile: observed at-least-one acceptance
// rate minus the margin, clamped to [0, 1]. nullopt when it equals the
// current value. Throws InsufficientData below n_min judgments.
std::optional<ThresholdProposal> recalibrate_profile(const kpi::UserSignals& signals, const std::string& profile,
                                                     double current, const RecalibrateOptions& options = {});

// Every profile with judgments in `signals`; the current value comes from
// the bundle's KPI configuration (0 when unset). Never applies anything.
std::vector<ThresholdProposal> recalibrate(const kpi::UserSignals& signals, const workflow::PolicyBundle& policy,
                                           const RecalibrateOptions& options = {});

}  // namespace plainloop::adaptation
