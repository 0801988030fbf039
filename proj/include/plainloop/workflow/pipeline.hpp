#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "plainloop/audit/log.hpp"
#include "plainloop/checklist/checklist.hpp"
#include "plainloop/kpi/kpis.hpp"
#include "plainloop/metrics/snapshot.hpp"
#include "plainloop/ruledsl/evaluate.hpp"
#include "plainloop/workflow/generator.hpp"
#include "plainloop/workflow/policy_store.hpp"
#include "plainloop/workflow/routing.hpp"
#include "plainloop/workflow/states.hpp"
#include "plainloop/workflow/transitions.hpp"
#include "plainloop/workflow/trends.hpp"

namespace plainloop::workflow {

struct SubmitRequest {
  std::string id;  // assigned when empty
  std::string source;
  std::optional<std::string> candidate;  // the stub generator runs when absent
  std::string profile;
  std::string domain;
  metrics::Language language = metrics::Language::es;
  std::vector<std::string> references;
  std::map<std::string, double> external_metrics;  // samsa, dsari, ...

  static SubmitRequest from_json(const nlohmann::json& j);  // throws InvalidInput
};

struct WorkItem {
  std::string id;
  std::string source;
  std::string output;  // current candidate, the delivered text once Delivered
  std::string profile;
  std::string domain;
  metrics::Language language = metrics::Language::es;
  bool high_risk = false;
  State state = State::Submitted;
  std::string policy_version;
  std::vector<std::string> references;
  std::map<std::string, double> external_metrics;
  std::optional<metrics::MetricSnapshot> snapshot;
  std::optional<ruledsl::RuleOutcome> rule_outcome;
  std::optional<double> cqi;
  std::optional<RoutingDecision> routing;
  std::optional<checklist::ChecklistResult> checklist;
  std::vector<Transition> history;
  int regenerations = 0;
  std::string output_ref;

  nlohmann::json to_json() const;
};

struct TermEdit {
  std::string from;
  std::string to;

  bool operator==(const TermEdit&) const = default;
};

struct ReviewDecision {
  std::string item_id;
  Verdict verdict = Verdict::Approve;
  std::optional<std::string> edited_output;
  checklist::ChecklistResult checklist;
  std::string reviewer_id;
  std::string rationale;
  // Lexical substitutions the reviewer made, for glossary consolidation.
  std::vector<TermEdit> term_edits;

  // Throws InvalidDecision: empty rationale or reviewer, edits on a plain
  // Approve, ApproveWithEdits without a changed output.
  void validate(const std::string& candidate) const;
  nlohmann::json to_json() const;
  static ReviewDecision from_json(const nlohmann::json& j);
};

using Clock = std::function<std::string()>;

// UTC, second resolution, e.g. 2026-01-01T00:00:00Z.
std::string utc_now();

// Drives work items through the transition relation. Every transition is
// appended to the audit log before the in-memory state changes, so a
// StorageFailure leaves the item where it was. Operations on one item are
// serialized; different items proceed independently.
class Pipeline {
 public:
  Pipeline(PolicyBundle policy, metrics::MetricEngine engine, std::shared_ptr<audit::AuditLog> log,
           std::shared_ptr<const Generator> generator = nullptr, Clock clock = utc_now);
  ~Pipeline();

  // Returns the item in Generated. Throws EmptySource, InvalidInput,
  // DuplicateItem.
  WorkItem submit(const SubmitRequest& request);
  // From Generated through evaluation, rules and routing; stops in
  // InReview, Delivered or AdaptationQueued.
  WorkItem process(const std::string& id);
  WorkItem submit_and_process(const SubmitRequest& request) { return process(submit(request).id); }

  // Throws NotInReview, InvalidDecision, NonCompliantChecklist,
  // RegenerationLimit.
  WorkItem record_decision(const ReviewDecision& decision);
  // RegenerationRequested -> Generated with a fresh output.
  WorkItem regenerate(const std::string& id, const std::optional<std::string>& output = std::nullopt);
  // Moves every AdaptationQueued item on to regeneration.
  std::vector<std::string> consolidate_adaptation(const std::string& actor);

  // Auto-filled checklist for the item's output, or for `text` when given.
  checklist::ChecklistResult prefill(const std::string& id, const std::optional<std::string>& text = {}) const;

  // Publishes a new policy version with a PolicyChange audit event.
  std::uint64_t apply_policy(const PolicyChange& change, const std::string& actor);
  // Appends a KpiSnapshot event and feeds KPI_5 into the trend tracker.
  std::uint64_t record_kpis(const std::vector<kpi::KpiRecord>& records, const std::string& actor);

  WorkItem get(const std::string& id) const;  // throws UnknownItem
  std::vector<WorkItem> items(std::optional<State> state = std::nullopt) const;
  std::shared_ptr<const PolicyBundle> policy() const;
  bool release_review_pending() const;
  TrendSnapshot trend() const;
  std::vector<double> delivered_cqis() const;

  audit::AuditLog& audit() { return *log_; }
  const audit::AuditLog& audit() const { return *log_; }
  const metrics::MetricEngine& engine() const { return engine_; }

 private:
  struct Slot;

  Slot& slot(const std::string& id) const;
  void commit(Slot& slot, const TransitionInput& input, audit::EventKind kind, nlohmann::json payload,
              const std::string& actor, const std::string& policy_version);
  std::string append_event(const std::string& item_id, audit::EventKind kind, nlohmann::json payload,
                           const std::string& actor, const std::string& policy_version);
  void delivered(double cqi);

  metrics::MetricEngine engine_;
  std::shared_ptr<audit::AuditLog> log_;
  std::shared_ptr<const Generator> generator_;
  Clock clock_;

  mutable std::mutex policy_mutex_;
  std::shared_ptr<const PolicyBundle> policy_;
  bool release_pending_ = false;
  TrendTracker trend_;
  std::vector<double> delivered_cqis_;

  mutable std::mutex items_mutex_;
  std::map<std::string, std::unique_ptr<Slot>> items_;
  std::set<std::string> reserved_;
  std::vector<std::string> order_;
  std::uint64_t next_id_ = 1;
};

}  // namespace plainloop::workflow
