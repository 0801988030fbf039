#include "plainloop/gateway/scenario.hpp"

#include <chrono>
#include <cstdio>
#include <memory>

#include "plainloop/adaptation/edits.hpp"
#include "plainloop/common/kv_config.hpp"
#include "plainloop/gateway/config.hpp"
#include "plainloop/ruledsl/trace.hpp"
#include "plainloop/workflow/replay.hpp"

namespace plainloop::gateway {

using checklist::Dimension;
using checklist::Source;
using checklist::Status;
using workflow::Verdict;

namespace {

workflow::Clock synthetic_clock() {
  auto tick = std::make_shared<int>(0);
  return [tick] {
    const int t = (*tick)++;
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "2026-01-01T09:%02d:%02dZ", (t / 60) % 60, t % 60);
    return std::string(buffer);
  };
}

std::string text_file(const std::string& data_dir, const std::string& name) {
  return trim(read_file(data_dir + "/appendix_a/" + name + ".txt"));
}

void human(checklist::ChecklistResult& c, Dimension d, Status s, const std::string& rationale) {
  c.set(d, {s, Source::Human, rationale});
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : sep) + p;
  return out;
}

}  // namespace

ScenarioReport run_appendix_a(const std::string& data_dir) {
  const auto started = std::chrono::steady_clock::now();
  ScenarioReport report;
  auto& trace = report.trace;

  const auto config = ServiceConfig::load(data_dir + "/plainloop.conf");
  auto service = build_service(config, std::make_shared<audit::MemoryStore>(), synthetic_clock());
  auto& pipeline = *service.pipeline;

  workflow::SubmitRequest request;
  request.id = "appendix-a";
  request.source = text_file(data_dir, "original");
  request.candidate = text_file(data_dir, "initial_adapted");
  request.profile = "id";
  request.domain = "public_administration";
  request.external_metrics = {{"samsa", 0.62}, {"dsari", 0.48}};
  const auto revision = text_file(data_dir, "revision");

  auto item = pipeline.submit(request);
  trace.push_back("submit " + item.id + " profile=" + item.profile + " domain=" + item.domain +
                  " policy=" + item.policy_version);
  item = pipeline.process(item.id);
  for (const auto& line : ruledsl::rationale_lines(*item.rule_outcome)) trace.push_back("  rule " + line);
  if (item.cqi) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "  cqi %.4f (gamma %.2f)", *item.cqi, pipeline.policy()->kpi.gamma);
    trace.push_back(buffer);
  }
  report.routing_kind = std::string(workflow::routing_kind_name(item.routing->kind));
  report.reasons = item.routing->reasons;
  trace.push_back("route " + report.routing_kind + " [" + join(report.reasons, ", ") + "] -> " +
                  std::string(workflow::state_name(item.state)));

  // Human pass on the candidate: the colloquial "papeleos" fails lexical
  // clarity, so only three dimensions hold.
  auto blocked = pipeline.prefill(item.id);
  human(blocked, Dimension::LexicalClarity, Status::Unsatisfied,
        "\"papeleos\" is colloquial and loses the administrative precision of \"trámites\"");
  human(blocked, Dimension::Relevance, Status::Satisfied, "keeps what the reader must do");
  human(blocked, Dimension::MultimodalSupport, Status::Satisfied, "one sentence, no visual support needed");
  human(blocked, Dimension::PromptModelAdaptation, Status::Satisfied, "vocabulary suits the profile");
  blocked.reviewer_id = "reviewer-1";
  report.blocked_satisfied = checklist::compliance(blocked).satisfied_count;

  workflow::ReviewDecision approve;
  approve.item_id = item.id;
  approve.verdict = Verdict::Approve;
  approve.checklist = blocked;
  approve.reviewer_id = "reviewer-1";
  approve.rationale = "candidate as generated";
  try {
    pipeline.record_decision(approve);
    trace.push_back("review approve " + std::to_string(report.blocked_satisfied) + "/6 -> accepted");
  } catch (const Error& e) {
    report.approve_rejection = e.code();
    trace.push_back("review approve " + std::to_string(report.blocked_satisfied) + "/6 -> refused (" +
                    std::string(error_code_name(e.code())) + ")");
  }

  auto edited = pipeline.prefill(item.id, revision);
  human(edited, Dimension::LexicalClarity, Status::Satisfied,
        "\"trámites administrativos\" is plain and keeps the register");
  human(edited, Dimension::Relevance, Status::Satisfied, "restores the licence requirement");
  human(edited, Dimension::MultimodalSupport, Status::Satisfied, "one sentence, no visual support needed");
  human(edited, Dimension::PromptModelAdaptation, Status::Satisfied, "vocabulary suits the profile");
  edited.reviewer_id = "reviewer-1";
  report.edit_satisfied = checklist::compliance(edited).satisfied_count;

  workflow::ReviewDecision edit;
  edit.item_id = item.id;
  edit.verdict = Verdict::ApproveWithEdits;
  edit.edited_output = revision;
  edit.checklist = edited;
  edit.reviewer_id = "reviewer-1";
  edit.rationale = "meaning-preserving simplification with administrative register";
  edit.term_edits = {{"papeleos", "trámites administrativos"}};
  item = pipeline.record_decision(edit);
  trace.push_back("review approve_with_edits " + std::to_string(report.edit_satisfied) +
                  "/6, papeleos -> trámites administrativos");
  for (const auto& t : item.history) {
    trace.push_back("  " + std::string(workflow::state_name(t.from)) + " --" +
                    std::string(workflow::event_name(t.event)) + "--> " + std::string(workflow::state_name(t.to)));
  }
  report.final_state = std::string(workflow::state_name(item.state));
  report.delivered_output = item.output;
  trace.push_back("deliver " + report.final_state);

  const auto decisions = adaptation::decisions_from_log(pipeline.audit().events());
  const auto exported = adaptation::export_preferences(decisions);
  adaptation::record_export(pipeline.audit(), exported, "operator", pipeline.policy()->version_string(),
                            "2026-01-01T10:00:00Z");
  report.preference_pairs = exported.pairs;
  const auto update = adaptation::consolidate(decisions, *pipeline.policy());
  report.glossary_candidates = update.glossary_candidates;
  report.glossary_additions = update.glossary_additions;
  trace.push_back("adapt " + std::to_string(report.preference_pairs.size()) + " preference pair(s)");
  for (const auto& g : report.glossary_candidates) {
    trace.push_back("  glossary candidate " + g.term + " -> " + g.substitute);
  }

  report.audit_jsonl =
      pipeline.audit().export_range(1, pipeline.audit().next_seq() - 1, audit::ExportRole::Auditor);
  try {
    const auto events = audit::verify_text(report.audit_jsonl);
    report.audit_verified = true;
    report.replay_matches = workflow::replay(events) == workflow::live_state(pipeline);
  } catch (const Error&) {
    report.audit_verified = false;
  }
  trace.push_back("audit " + std::to_string(pipeline.audit().size()) + " events, chain " +
                  (report.audit_verified ? "verified" : "BROKEN") + ", replay " +
                  (report.replay_matches ? "matches" : "DIVERGES"));
  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  return report;
}

}  // namespace plainloop::gateway
