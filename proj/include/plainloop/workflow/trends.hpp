#pragma once

#include <deque>
#include <optional>

namespace plainloop::workflow {

// What route() needs to know about quality trends, captured by value so
// routing stays a pure function.
struct TrendSnapshot {
  int kpi5_unsatisfied_streak = 0;
  std::optional<double> rolling_cqi;  // set once the window is full

  bool operator==(const TrendSnapshot&) const = default;
};

// KPI_5 unsatisfied for `cycles` consecutive cycles, or the mean CQI of the
// last `window` delivered items below gamma.
bool adaptation_due(const TrendSnapshot& trend, int cycles, double gamma);

class TrendTracker {
 public:
  explicit TrendTracker(int window) : window_(window) {}

  void record_kpi5(bool satisfied) { streak_ = satisfied ? 0 : streak_ + 1; }
  void record_delivered_cqi(double cqi);

  TrendSnapshot snapshot() const;

 private:
  int window_;
  int streak_ = 0;
  std::deque<double> cqis_;
};

}  // namespace plainloop::workflow
