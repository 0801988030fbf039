#include "plainloop/kpi/statistics.hpp"

#include <map>

#include "plainloop/common/error.hpp"

namespace plainloop::kpi {

std::string_view acceptance_name(Acceptance a) {
  switch (a) {
    case Acceptance::None: return "none";
    case Acceptance::Some: return "some";
    case Acceptance::All: return "all";
  }
  return "?";
}

Acceptance parse_acceptance(std::string_view text) {
  for (const auto a : {Acceptance::None, Acceptance::Some, Acceptance::All}) {
    if (acceptance_name(a) == text) return a;
  }
  throw Error(ErrorCode::InvalidInput, "acceptance must be none, some or all");
}

double acceptance_rate(const std::vector<SynonymJudgment>& judgments, const std::string& profile,
                       AcceptanceCategory category) {
  long total = 0;
  long hits = 0;
  for (const auto& j : judgments) {
    if (j.profile != profile) continue;
    ++total;
    switch (category) {
      case AcceptanceCategory::None: hits += j.accepted == Acceptance::None; break;
      case AcceptanceCategory::Some: hits += j.accepted == Acceptance::Some; break;
      case AcceptanceCategory::All: hits += j.accepted == Acceptance::All; break;
      case AcceptanceCategory::AtLeastOne: hits += j.accepted != Acceptance::None; break;
    }
  }
  if (total == 0) throw Error(ErrorCode::NoData, "no synonym judgments for profile '" + profile + "'");
  return static_cast<double>(hits) / static_cast<double>(total);
}

CwiScores cwi_scores(const std::set<std::string>& predicted, const std::set<std::string>& gold) {
  if (gold.empty()) throw Error(ErrorCode::EmptyGold, "gold complex-word set is empty");
  std::size_t overlap = 0;
  for (const auto& w : predicted) overlap += gold.count(w);
  CwiScores s;
  s.precision = predicted.empty() ? 0.0 : static_cast<double>(overlap) / static_cast<double>(predicted.size());
  s.recall = static_cast<double>(overlap) / static_cast<double>(gold.size());
  s.f1 = s.precision + s.recall > 0 ? 2 * s.precision * s.recall / (s.precision + s.recall) : 0.0;
  return s;
}

double cohen_kappa(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::LengthMismatch, "annotation sequences differ in length");
  if (a.size() < 2) throw Error(ErrorCode::InvalidArgument, "kappa needs at least two items");
  const auto n = static_cast<double>(a.size());
  std::map<std::string, double> count_a, count_b;
  double agree = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    count_a[a[i]] += 1;
    count_b[b[i]] += 1;
    agree += a[i] == b[i];
  }
  double expected = 0;
  for (const auto& [label, ca] : count_a) {
    const auto it = count_b.find(label);
    if (it != count_b.end()) expected += (ca / n) * (it->second / n);
  }
  if (expected >= 1.0) {
    throw Error(ErrorCode::DegenerateDistribution, "chance agreement is 1; kappa is undefined");
  }
  return (agree / n - expected) / (1.0 - expected);
}

}  // namespace plainloop::kpi
