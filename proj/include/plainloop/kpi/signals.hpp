#pragma once

#include <set>
#include <string>
#include <vector>

#include "plainloop/kpi/statistics.hpp"

namespace plainloop::kpi {

struct ComprehensionScore {
  std::string user;
  std::string profile;
  double baseline = 0.0;  // pretest
  double post = 0.0;
};

struct GlossaryActivations {
  std::string profile;
  long activations = 0;
  long opportunities = 0;
};

struct CwiMarks {
  std::string profile;
  std::set<std::string> predicted;
  std::set<std::string> gold;
};

struct AdaptationAccuracy {
  int cycle = 0;
  double accuracy = 0.0;
};

// Reader and model evidence, one JSON object per line with a "kind":
//   {"kind":"comprehension","user":..,"profile":..,"baseline":..,"post":..}
//   {"kind":"synonym_judgment","item":..,"profile":..,"accepted":"none|some|all"}
//   {"kind":"glossary","profile":..,"activations":n,"opportunities":n}
//   {"kind":"cwi","profile":..,"predicted":[..],"gold":[..]}
//   {"kind":"adaptation","cycle":n,"accuracy":x}
struct UserSignals {
  std::vector<ComprehensionScore> comprehension;
  std::vector<SynonymJudgment> synonym_judgments;
  std::vector<GlossaryActivations> glossary;
  std::vector<CwiMarks> cwi;
  std::vector<AdaptationAccuracy> adaptation;

  // Throws InvalidInput naming the line for malformed records or negative
  // counts.
  static UserSignals parse_jsonl(std::string_view text);
  static UserSignals load(const std::string& path);
  void append(const UserSignals& other);
};

}  // namespace plainloop::kpi
