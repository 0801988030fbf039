#pragma once

#include <array>
#include <json.hpp>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "plainloop/metrics/snapshot.hpp"
#include "plainloop/metrics/text_unit.hpp"

namespace plainloop::checklist {

enum class Dimension {
  LexicalClarity,
  SyntacticSimplicity,
  StructuralClarity,
  Relevance,
  MultimodalSupport,
  PromptModelAdaptation,
};

inline constexpr std::array<Dimension, 6> kDimensions = {
    Dimension::LexicalClarity, Dimension::SyntacticSimplicity,   Dimension::StructuralClarity,
    Dimension::Relevance,      Dimension::MultimodalSupport,     Dimension::PromptModelAdaptation};

// At least two-thirds of the six dimensions.
inline constexpr int kCompliantCount = 4;

std::string_view dimension_id(Dimension d);  // "lexical_clarity", ...
Dimension parse_dimension(std::string_view id);  // throws UnknownDimension

enum class Status { Satisfied, Unsatisfied, Unknown };
enum class Source { Auto, Human };

std::string_view status_name(Status s);
Status parse_status(std::string_view s);
std::string_view source_name(Source s);

struct Entry {
  Status status = Status::Unknown;
  Source source = Source::Auto;
  std::string rationale;

  bool operator==(const Entry&) const = default;
};

struct Compliance {
  bool compliant = false;
  int satisfied_count = 0;
  int evaluated_count = 0;  // entries that are not unknown
};

class ChecklistResult {
 public:
  const Entry& at(Dimension d) const { return entries_[static_cast<std::size_t>(d)]; }
  void set(Dimension d, Entry e) { entries_[static_cast<std::size_t>(d)] = std::move(e); }

  std::optional<std::string> reviewer_id;
  std::string policy_version;

  nlohmann::json to_json() const;
  // Throws InvalidInput (or UnknownDimension) for malformed documents.
  static ChecklistResult from_json(const nlohmann::json& j);

  bool operator==(const ChecklistResult&) const = default;

 private:
  std::array<Entry, 6> entries_{};
};

// Unknown counts as not satisfied.
Compliance compliance(const ChecklistResult& result);

struct HumanEntry {
  std::string dimension;
  Status status = Status::Unknown;
  std::string rationale;
};

// Human entries replace auto entries. Throws UnknownDimension, or
// MissingRationale naming the dimension.
ChecklistResult merge_review(const ChecklistResult& base, const std::vector<HumanEntry>& human,
                             const std::string& reviewer_id);

struct PrefillOptions {
  std::size_t max_sentence_tokens = metrics::kDefaultMaxSentenceTokens;
  double structural_bar = 0.8;
};

// Machine checks for three dimensions; the other three stay unknown.
ChecklistResult auto_prefill(const metrics::TextUnit& output, const metrics::MetricSnapshot& snapshot,
                             const std::set<std::string>& glossary, const std::string& policy_version = {},
                             const PrefillOptions& options = {});

// Tokens with two or more uppercase letters and no lowercase ones, skipping
// sentences written entirely in capitals.
std::vector<std::string> detect_acronyms(const metrics::TextUnit& text);
// Acronyms with neither an adjacent parenthetical expansion nor a glossary
// entry (glossary matched case-insensitively).
std::vector<std::string> unexplained_acronyms(const metrics::TextUnit& text, const std::set<std::string>& glossary);

}  // namespace plainloop::checklist
