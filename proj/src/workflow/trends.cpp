#include "plainloop/workflow/trends.hpp"

#include <numeric>

namespace plainloop::workflow {

bool adaptation_due(const TrendSnapshot& trend, int cycles, double gamma) {
  if (trend.kpi5_unsatisfied_streak >= cycles) return true;
  return trend.rolling_cqi && *trend.rolling_cqi < gamma;
}

void TrendTracker::record_delivered_cqi(double cqi) {
  cqis_.push_back(cqi);
  if (static_cast<int>(cqis_.size()) > window_) cqis_.pop_front();
}

TrendSnapshot TrendTracker::snapshot() const {
  TrendSnapshot s;
  s.kpi5_unsatisfied_streak = streak_;
  if (static_cast<int>(cqis_.size()) == window_) {
    // Summed afresh each time: a running sum drifts over long streams.
    s.rolling_cqi = std::accumulate(cqis_.begin(), cqis_.end(), 0.0) / window_;
  }
  return s;
}

}  // namespace plainloop::workflow
