#include "plainloop/adaptation/preferences.hpp"

namespace plainloop::adaptation {

using nlohmann::json;

json PreferencePair::to_json() const {
  return {{"context", context}, {"chosen", chosen}, {"rejected", rejected}, {"provenance", provenance}};
}

PreferenceExport export_preferences(const std::vector<DecisionRecord>& decisions) {
  PreferenceExport out;
  for (const auto& d : decisions) {
    if (d.verdict != workflow::Verdict::ApproveWithEdits) continue;
    if (!d.output || !d.candidate || !d.source) {
      out.skipped_redacted.push_back(d.decision_id);
      continue;
    }
    if (*d.output == *d.candidate) continue;  // validation forbids this; stay safe on foreign logs
    json rationales = json::object();
    for (const auto dim : checklist::kDimensions) {
      const auto& entry = d.checklist.at(dim);
      if (!entry.rationale.empty()) rationales[std::string(checklist::dimension_id(dim))] = entry.rationale;
    }
    PreferencePair p;
    p.context = {{"source", *d.source},
                 {"profile", d.profile},
                 {"domain", d.domain},
                 {"constraints", d.constraints}};
    p.chosen = *d.output;
    p.rejected = *d.candidate;
    p.provenance = {{"decision_id", d.decision_id},
                    {"item_id", d.item_id},
                    {"reviewer_id", d.reviewer_id},
                    {"rationale", d.rationale},
                    {"policy_version", d.policy_version},
                    {"checklist_rationales", rationales}};
    out.pairs.push_back(std::move(p));
  }
  return out;
}

std::string preferences_jsonl(const std::vector<PreferencePair>& pairs) {
  std::string out;
  for (const auto& p : pairs) out += p.to_json().dump() + "\n";
  return out;
}

std::uint64_t record_export(audit::AuditLog& log, const PreferenceExport& exported, const std::string& actor,
                            const std::string& policy_version, const std::string& ts) {
  json ids = json::array();
  for (const auto& p : exported.pairs) ids.push_back(p.provenance["decision_id"]);
  audit::NewEvent e;
  e.kind = audit::EventKind::AdaptationExport;
  e.policy_version = policy_version;
  e.actor = actor;
  e.ts = ts;
  e.payload = {{"format", "preference_pairs"},
               {"decision_ids", ids},
               {"skipped_redacted", exported.skipped_redacted}};
  return log.append(e);
}

}  // namespace plainloop::adaptation
