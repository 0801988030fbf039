#include "plainloop/adaptation/recalibrate.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "plainloop/common/error.hpp"
#include "plainloop/kpi/statistics.hpp"
#include "plainloop/ruledsl/thresholds.hpp"

namespace plainloop::adaptation {

std::optional<ThresholdProposal> recalibrate_profile(const kpi::UserSignals& signals, const std::string& profile,
                                                     double current, const RecalibrateOptions& options) {
  const auto n = static_cast<std::size_t>(
      std::count_if(signals.synonym_judgments.begin(), signals.synonym_judgments.end(),
                    [&](const kpi::SynonymJudgment& j) { return j.profile == profile; }));
  if (n < options.min_observations) {
    throw Error(ErrorCode::InsufficientData, profile + ": " + std::to_string(n) + " judgments, need " +
                                                 std::to_string(options.min_observations));
  }
  const double rate =
      kpi::acceptance_rate(signals.synonym_judgments, profile, kpi::AcceptanceCategory::AtLeastOne);
  const double proposed = std::clamp(rate - options.margin, 0.0, 1.0);
  if (std::fabs(proposed - current) < 1e-9) return std::nullopt;
  return ThresholdProposal{profile, ruledsl::kWildcard, "theta_profile", current, proposed, n};
}

std::vector<ThresholdProposal> recalibrate(const kpi::UserSignals& signals, const workflow::PolicyBundle& policy,
                                           const RecalibrateOptions& options) {
  std::set<std::string> profiles;
  for (const auto& j : signals.synonym_judgments) profiles.insert(j.profile);
  std::vector<ThresholdProposal> out;
  for (const auto& profile : profiles) {
    const auto it = policy.kpi.theta_profile.find(profile);
    const double current = it == policy.kpi.theta_profile.end() ? 0.0 : it->second;
    if (auto p = recalibrate_profile(signals, profile, current, options)) out.push_back(std::move(*p));
  }
  return out;
}

}  // namespace plainloop::adaptation
