#pragma once

#include <optional>
#include <string>
#include <vector>

#include "plainloop/adaptation/consolidate.hpp"
#include "plainloop/adaptation/preferences.hpp"
#include "plainloop/common/error.hpp"

namespace plainloop::gateway {

// Outcome of the built-in worked example: the "papeleos" candidate is
// escalated, a plain approval is refused on a 3/6 checklist, the revision
// is approved with edits and delivered, and the adaptation exports run.
struct ScenarioReport {
  std::vector<std::string> trace;  // human-readable, one step per line
  std::string routing_kind;
  std::vector<std::string> reasons;
  std::optional<ErrorCode> approve_rejection;
  int blocked_satisfied = 0;
  int edit_satisfied = 0;
  std::string final_state;
  std::string delivered_output;
  std::vector<adaptation::PreferencePair> preference_pairs;
  std::vector<adaptation::GlossaryAddition> glossary_candidates;
  std::vector<adaptation::GlossaryAddition> glossary_additions;
  bool audit_verified = false;
  bool replay_matches = false;
  std::string audit_jsonl;  // auditor export of the whole run
  double elapsed_ms = 0.0;
};

// Texts and configuration come from `data_dir` (appendix_a/*.txt and
// plainloop.conf). Timestamps are synthetic so the audit export is stable.
ScenarioReport run_appendix_a(const std::string& data_dir = PLAINLOOP_DATA_DIR);

}  // namespace plainloop::gateway
