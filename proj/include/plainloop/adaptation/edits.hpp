#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "plainloop/audit/event.hpp"
#include "plainloop/checklist/checklist.hpp"
#include "plainloop/metrics/text_unit.hpp"
#include "plainloop/workflow/pipeline.hpp"

namespace plainloop::adaptation {

// A review decision as the audit log records it, with the texts it refers
// to resolved. Texts are absent once the item has been redacted.
struct DecisionRecord {
  std::uint64_t decision_id = 0;  // seq of the ReviewDecision event
  std::string item_id;
  workflow::Verdict verdict = workflow::Verdict::Approve;
  std::string reviewer_id;
  std::string rationale;
  std::string policy_version;
  std::string profile;
  std::string domain;
  metrics::Language language = metrics::Language::es;
  std::vector<std::string> constraints;
  checklist::ChecklistResult checklist;
  std::vector<workflow::TermEdit> term_edits;
  std::optional<std::string> source;
  std::optional<std::string> candidate;
  std::optional<std::string> output;  // edited text for approve_with_edits
};

// ReviewDecision events with seq in [first, last].
std::vector<DecisionRecord> decisions_from_log(const std::vector<audit::AuditEvent>& events,
                                               std::uint64_t first = 1,
                                               std::uint64_t last = std::numeric_limits<std::uint64_t>::max());

// Short replacements (at most `max_span` tokens on each side) in a token
// diff of the two texts, lowercased. Pure insertions and deletions are
// skipped. Used when a decision carries no explicit term edits.
std::vector<workflow::TermEdit> lexical_edits(const std::string& before, const std::string& after,
                                              metrics::Language language, std::size_t max_span = 3);

}  // namespace plainloop::adaptation
