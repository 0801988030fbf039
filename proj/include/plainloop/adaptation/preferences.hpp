#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "plainloop/adaptation/edits.hpp"
#include "plainloop/audit/log.hpp"

namespace plainloop::adaptation {

struct PreferencePair {
  nlohmann::json context;  // source, profile, domain, constraints
  std::string chosen;      // approved edited output
  std::string rejected;    // candidate before the edit
  nlohmann::json provenance;  // decision_id, item_id, reviewer_id, rationale, checklist rationales

  nlohmann::json to_json() const;
};

struct PreferenceExport {
  std::vector<PreferencePair> pairs;
  // ApproveWithEdits decisions whose texts were redacted.
  std::vector<std::uint64_t> skipped_redacted;
};

// One pair per ApproveWithEdits decision.
PreferenceExport export_preferences(const std::vector<DecisionRecord>& decisions);

// {context, chosen, rejected, provenance} per line, keys sorted.
std::string preferences_jsonl(const std::vector<PreferencePair>& pairs);

// AdaptationExport audit event naming the decisions exported.
std::uint64_t record_export(audit::AuditLog& log, const PreferenceExport& exported, const std::string& actor,
                            const std::string& policy_version, const std::string& ts);

}  // namespace plainloop::adaptation
