#pragma once

#include <set>
#include <string>
#include <vector>

namespace plainloop::kpi {

enum class Acceptance { None, Some, All };
enum class AcceptanceCategory { None, Some, All, AtLeastOne };

std::string_view acceptance_name(Acceptance a);
Acceptance parse_acceptance(std::string_view text);

struct SynonymJudgment {
  std::string item;
  std::string profile;
  Acceptance accepted = Acceptance::None;
};

// Share of the profile's judgments in `category`. Throws NoData.
double acceptance_rate(const std::vector<SynonymJudgment>& judgments, const std::string& profile,
                       AcceptanceCategory category);

struct CwiScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Set-based scores. Empty prediction gives precision 0. Throws EmptyGold.
CwiScores cwi_scores(const std::set<std::string>& predicted, const std::set<std::string>& gold);

// Throws LengthMismatch for unequal lengths, InvalidArgument for fewer than
// two items, DegenerateDistribution when chance agreement is 1.
double cohen_kappa(const std::vector<std::string>& a, const std::vector<std::string>& b);

}  // namespace plainloop::kpi
