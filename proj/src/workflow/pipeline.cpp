#include "plainloop/workflow/pipeline.hpp"

#include <algorithm>
#include <ctime>

#include "plainloop/common/error.hpp"
#include "plainloop/common/utf8.hpp"
#include "plainloop/kpi/cqi.hpp"
#include "plainloop/ruledsl/trace.hpp"
#include "plainloop/workflow/transitions.hpp"

namespace plainloop::workflow {

using audit::EventKind;
using nlohmann::json;

namespace {

bool valid_id(const std::string& id) {
  if (id.empty() || id.size() > 128) return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' ||
           c == '_' || c == '.' || c == ':';
  });
}

std::optional<double> try_cqi(const metrics::MetricSnapshot& snapshot, const kpi::KpiConfig& config) {
  try {
    return kpi::compute_cqi(snapshot, config);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::MissingComponent) return std::nullopt;
    throw;
  }
}

TransitionInput plain(Event event) {
  TransitionInput input;
  input.event = event;
  return input;
}

Event routing_event(RoutingDecision::Kind kind) {
  switch (kind) {
    case RoutingDecision::Kind::AutoApprove: return Event::AutoApproved;
    case RoutingDecision::Kind::Escalate: return Event::EscalationTriggered;
    case RoutingDecision::Kind::AdaptSignal: return Event::AdaptationSignaled;
  }
  return Event::EscalationTriggered;
}

std::string require_string(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_string()) {
    throw Error(ErrorCode::InvalidInput, std::string("field '") + key + "' must be a string");
  }
  return it->get<std::string>();
}

}  // namespace

std::string utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

SubmitRequest SubmitRequest::from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidInput, "submission must be a JSON object");
  static const std::set<std::string> known = {"id",       "source",     "candidate",        "profile",
                                              "domain",   "language",   "references",       "external_metrics"};
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw Error(ErrorCode::InvalidInput, "unknown submission field: " + key);
  }
  SubmitRequest r;
  r.source = require_string(j, "source");
  r.profile = require_string(j, "profile");
  r.domain = require_string(j, "domain");
  if (j.contains("id")) r.id = require_string(j, "id");
  if (j.contains("candidate") && !j["candidate"].is_null()) r.candidate = require_string(j, "candidate");
  if (j.contains("language")) r.language = metrics::parse_language(require_string(j, "language"));
  try {
    if (j.contains("references")) r.references = j["references"].get<std::vector<std::string>>();
    if (j.contains("external_metrics")) {
      r.external_metrics = j["external_metrics"].get<std::map<std::string, double>>();
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("malformed submission: ") + e.what());
  }
  return r;
}

json WorkItem::to_json() const {
  json history_json = json::array();
  for (const auto& t : history) history_json.push_back(t.to_json());
  json j = {{"id", id},
            {"source", source},
            {"output", output},
            {"profile", profile},
            {"domain", domain},
            {"language", metrics::language_name(language)},
            {"high_risk", high_risk},
            {"state", state_name(state)},
            {"policy_version", policy_version},
            {"history", history_json},
            {"regenerations", regenerations},
            {"output_ref", output_ref}};
  if (snapshot) j["snapshot"] = snapshot->to_json();
  if (rule_outcome) {
    j["rule_outcome"] = ruledsl::outcome_to_json(*rule_outcome);
    j["rationale"] = ruledsl::rationale_lines(*rule_outcome);
  }
  if (cqi) j["cqi"] = *cqi;
  if (routing) j["routing"] = routing->to_json();
  if (checklist) j["checklist"] = checklist->to_json();
  return j;
}

void ReviewDecision::validate(const std::string& candidate) const {
  if (trim(rationale).empty()) throw Error(ErrorCode::InvalidDecision, "decision rationale is empty");
  if (trim(reviewer_id).empty()) throw Error(ErrorCode::InvalidDecision, "decision has no reviewer");
  switch (verdict) {
    case Verdict::Approve:
    case Verdict::RequestRegeneration:
      if (edited_output) {
        throw Error(ErrorCode::InvalidDecision,
                    std::string(verdict_name(verdict)) + " must not carry an edited output");
      }
      break;
    case Verdict::ApproveWithEdits:
      if (!edited_output || trim(*edited_output).empty()) {
        throw Error(ErrorCode::InvalidDecision, "approve_with_edits needs an edited output");
      }
      if (*edited_output == candidate) {
        throw Error(ErrorCode::InvalidDecision, "edited output is identical to the candidate");
      }
      if (!utf8::is_valid(*edited_output)) throw Error(ErrorCode::InvalidInput, "edited output is not UTF-8");
      break;
  }
  for (const auto& e : term_edits) {
    if (trim(e.from).empty() || trim(e.to).empty() || e.from == e.to) {
      throw Error(ErrorCode::InvalidDecision, "term edit needs distinct non-empty terms");
    }
  }
}

json ReviewDecision::to_json() const {
  json edits = json::array();
  for (const auto& e : term_edits) edits.push_back({{"from", e.from}, {"to", e.to}});
  json j = {{"item_id", item_id},         {"verdict", verdict_name(verdict)},
            {"checklist", checklist.to_json()}, {"reviewer_id", reviewer_id},
            {"rationale", rationale},     {"term_edits", edits}};
  if (edited_output) j["edited_output"] = *edited_output;
  return j;
}

ReviewDecision ReviewDecision::from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidInput, "decision must be a JSON object");
  ReviewDecision d;
  if (j.contains("item_id")) d.item_id = require_string(j, "item_id");
  d.verdict = parse_verdict(require_string(j, "verdict"));
  d.reviewer_id = j.contains("reviewer_id") ? require_string(j, "reviewer_id") : "";
  d.rationale = j.contains("rationale") ? require_string(j, "rationale") : "";
  if (j.contains("edited_output") && !j["edited_output"].is_null()) {
    d.edited_output = require_string(j, "edited_output");
  }
  if (!j.contains("checklist")) throw Error(ErrorCode::InvalidInput, "decision needs a checklist");
  d.checklist = checklist::ChecklistResult::from_json(j["checklist"]);
  if (j.contains("term_edits")) {
    if (!j["term_edits"].is_array()) throw Error(ErrorCode::InvalidInput, "term_edits must be an array");
    for (const auto& e : j["term_edits"]) {
      if (!e.is_object()) throw Error(ErrorCode::InvalidInput, "term edit must be an object");
      d.term_edits.push_back({require_string(e, "from"), require_string(e, "to")});
    }
  }
  return d;
}

struct Pipeline::Slot {
  std::mutex mutex;
  WorkItem item;
};

Pipeline::Pipeline(PolicyBundle policy, metrics::MetricEngine engine, std::shared_ptr<audit::AuditLog> log,
                   std::shared_ptr<const Generator> generator, Clock clock)
    : engine_(std::move(engine)),
      log_(std::move(log)),
      generator_(generator ? std::move(generator)
                           : std::make_shared<StubGenerator>(engine_.config().max_sentence_tokens,
                                                             engine_.config().language)),
      clock_(std::move(clock)),
      trend_(policy.governance.trend_window) {
  if (!log_) throw Error(ErrorCode::InvalidArgument, "pipeline needs an audit log");
  policy.kpi.validate();
  policy_ = std::make_shared<const PolicyBundle>(std::move(policy));
}

Pipeline::~Pipeline() = default;

Pipeline::Slot& Pipeline::slot(const std::string& id) const {
  std::lock_guard lock(items_mutex_);
  const auto it = items_.find(id);
  if (it == items_.end()) throw Error(ErrorCode::UnknownItem, "unknown item: " + id);
  return *it->second;
}

std::string Pipeline::append_event(const std::string& item_id, EventKind kind, json payload,
                                   const std::string& actor, const std::string& policy_version) {
  audit::NewEvent e;
  e.item_id = item_id;
  e.kind = kind;
  e.policy_version = policy_version;
  e.actor = actor;
  e.ts = clock_();
  e.payload = std::move(payload);
  return std::to_string(log_->append(e));
}

void Pipeline::commit(Slot& s, const TransitionInput& input, EventKind kind, json payload,
                      const std::string& actor, const std::string& policy_version) {
  auto transition = apply_transition(s.item.state, input);
  payload["transition"] = transition.to_json();
  append_event(s.item.id, kind, std::move(payload), actor, policy_version);
  s.item.state = transition.to;
  s.item.policy_version = policy_version;
  s.item.history.push_back(transition);
}

WorkItem Pipeline::submit(const SubmitRequest& request) {
  if (trim(request.source).empty()) throw Error(ErrorCode::EmptySource, "source text is empty");
  if (!utf8::is_valid(request.source)) throw Error(ErrorCode::InvalidInput, "source is not valid UTF-8");
  if (request.candidate) {
    if (trim(*request.candidate).empty()) throw Error(ErrorCode::InvalidInput, "candidate is empty");
    if (!utf8::is_valid(*request.candidate)) throw Error(ErrorCode::InvalidInput, "candidate is not valid UTF-8");
  }
  if (request.profile.empty() || request.domain.empty()) {
    throw Error(ErrorCode::InvalidInput, "profile and domain are required");
  }
  for (const auto& [key, value] : request.external_metrics) {
    if (!metrics::is_metric_key(key)) throw Error(ErrorCode::InvalidInput, "bad metric key: " + key);
  }
  const auto policy = this->policy();

  auto owned = std::make_unique<Slot>();
  auto& item = owned->item;
  {
    std::lock_guard lock(items_mutex_);
    auto id = request.id;
    if (id.empty()) {
      do {
        char buffer[32];
        std::snprintf(buffer, sizeof buffer, "item-%06llu", static_cast<unsigned long long>(next_id_++));
        id = buffer;
      } while (items_.count(id) || reserved_.count(id));
    } else if (!valid_id(id)) {
      throw Error(ErrorCode::InvalidInput, "item id must match [A-Za-z0-9_.:-]{1,128}");
    } else if (items_.count(id) || reserved_.count(id)) {
      throw Error(ErrorCode::DuplicateItem, "duplicate item id: " + id);
    }
    reserved_.insert(id);
    item.id = id;
  }
  // The item becomes visible only after its Submitted event is durable.
  const auto release = [&] {
    std::lock_guard lock(items_mutex_);
    reserved_.erase(item.id);
  };
  item.source = request.source;
  item.profile = request.profile;
  item.domain = request.domain;
  item.language = request.language;
  item.high_risk = policy->governance.is_high_risk(request.domain);
  item.references = request.references;
  item.external_metrics = request.external_metrics;
  item.state = State::Submitted;

  json payload = {{"profile", item.profile},
                  {"domain", item.domain},
                  {"language", metrics::language_name(item.language)},
                  {"high_risk", item.high_risk},
                  {"constraints", policy->constraints},
                  {"external_metrics", item.external_metrics}};
  try {
    if (request.candidate) {
      item.output = *request.candidate;
      payload["generator"] = "external";
    } else {
      GenerationRequest g{item.source, item.profile, item.domain, policy->constraints, 0};
      item.output = generator_->generate(g, policy->glossary);
      payload["generator"] = generator_->id();
    }
    payload["source"] = log_->text(item.source, item.id + ":source");
    const auto output = log_->text(item.output, item.id + ":output:0");
    payload["output"] = output;
    json refs = json::array();
    for (std::size_t i = 0; i < item.references.size(); ++i) {
      refs.push_back(log_->text(item.references[i], item.id + ":reference:" + std::to_string(i)));
    }
    payload["references"] = refs;
    commit(*owned, {Event::Regenerated, std::nullopt, false, item.high_risk}, EventKind::Submitted, payload,
           "system", policy->version_string());
    item.output_ref = audit::text_ref(output);
  } catch (...) {
    release();
    throw;
  }
  const WorkItem result = item;
  {
    std::lock_guard lock(items_mutex_);
    reserved_.erase(result.id);
    order_.push_back(result.id);
    items_.emplace(result.id, std::move(owned));
  }
  return result;
}

WorkItem Pipeline::process(const std::string& id) {
  auto& s = slot(id);
  std::lock_guard lock(s.mutex);
  auto& item = s.item;
  if (item.state != State::Generated) {
    throw Error(ErrorCode::IllegalTransition,
                "cannot process " + id + " in state " + std::string(state_name(item.state)));
  }
  std::shared_ptr<const PolicyBundle> policy;
  bool release_pending = false;
  TrendSnapshot trend;
  {
    std::lock_guard plock(policy_mutex_);
    policy = policy_;
    release_pending = release_pending_;
    trend = trend_.snapshot();
  }
  const auto version = policy->version_string();

  // Everything that can fail runs before the first transition.
  const auto snapshot = engine_.snapshot(
      {item.source, item.output, item.language, item.domain, item.references, item.external_metrics});
  const auto resolved = ruledsl::resolve(policy->rules, policy->thresholds, item.profile, item.domain);
  const auto outcome = ruledsl::evaluate(resolved, snapshot.bindings(), {policy->missing_data});
  const auto cqi = try_cqi(snapshot, policy->kpi);
  RoutingContext context{item.id, item.high_risk, outcome, cqi, policy->kpi.gamma, policy->governance,
                         release_pending, trend, item.regenerations};
  const auto decision = route(context);

  commit(s, plain(Event::SnapshotReady), EventKind::Snapshot,
         {{"stage", "evaluation"}, {"metrics", snapshot.to_json()}, {"output_ref", item.output_ref}}, "system",
         version);
  item.snapshot = snapshot;

  json provenance = json::array();
  for (const auto& r : resolved.provenance) {
    provenance.push_back({{"rule", r.rule_id}, {"symbol", r.symbol}, {"value", r.value},
                          {"profile", r.profile}, {"domain", r.domain}, {"note", r.note}});
  }
  commit(s, plain(Event::RulesEvaluated), EventKind::RuleTrace,
         {{"rules_version", resolved.version},
          {"outcome", ruledsl::outcome_to_json(outcome)},
          {"rationale", ruledsl::rationale_lines(outcome)},
          {"thresholds", provenance}},
         "system", version);
  item.rule_outcome = outcome;
  item.cqi = cqi;

  json routing_payload = {{"decision", decision.to_json()}, {"gamma", policy->kpi.gamma}, {"trend",
      {{"kpi5_unsatisfied_streak", trend.kpi5_unsatisfied_streak}}}};
  routing_payload["cqi"] = cqi ? json(*cqi) : json(nullptr);
  if (trend.rolling_cqi) routing_payload["trend"]["rolling_cqi"] = *trend.rolling_cqi;
  commit(s, {routing_event(decision.kind), std::nullopt, false, item.high_risk}, EventKind::Routing,
         routing_payload, "system", version);
  item.routing = decision;

  switch (decision.kind) {
    case RoutingDecision::Kind::Escalate:
      commit(s, plain(Event::ReviewAssigned), EventKind::Routing, {{"queue", "review"}, {"reasons", decision.reasons}},
             "system", version);
      break;
    case RoutingDecision::Kind::AutoApprove:
      commit(s, plain(Event::Released), EventKind::Delivery, {{"output_ref", item.output_ref}, {"cqi", *cqi}},
             "system", version);
      delivered(*cqi);
      break;
    case RoutingDecision::Kind::AdaptSignal:
      break;
  }
  return item;
}

WorkItem Pipeline::record_decision(const ReviewDecision& decision) {
  auto& s = slot(decision.item_id);
  std::lock_guard lock(s.mutex);
  auto& item = s.item;
  if (item.state != State::InReview) {
    throw Error(ErrorCode::NotInReview,
                item.id + " is " + std::string(state_name(item.state)) + ", not InReview");
  }
  decision.validate(item.output);
  const auto compliance = checklist::compliance(decision.checklist);
  if (approves(decision.verdict) && !compliance.compliant) {
    throw Error(ErrorCode::NonCompliantChecklist,
                "checklist has " + std::to_string(compliance.satisfied_count) + "/6 satisfied, needs " +
                    std::to_string(checklist::kCompliantCount));
  }
  std::shared_ptr<const PolicyBundle> policy;
  {
    std::lock_guard plock(policy_mutex_);
    policy = policy_;
  }
  if (decision.verdict == Verdict::RequestRegeneration &&
      item.regenerations >= policy->governance.regeneration_limit) {
    throw Error(ErrorCode::RegenerationLimit,
                item.id + " reached the regeneration limit of " +
                    std::to_string(policy->governance.regeneration_limit) + "; approve or edit instead");
  }
  const auto version = policy->version_string();
  const auto candidate_ref = item.output_ref;
  auto output_ref = item.output_ref;
  std::optional<metrics::MetricSnapshot> edited_snapshot;
  std::optional<double> edited_cqi;

  if (decision.verdict == Verdict::ApproveWithEdits) {
    edited_snapshot = engine_.snapshot({item.source, *decision.edited_output, item.language, item.domain,
                                        item.references, item.external_metrics});
    edited_cqi = try_cqi(*edited_snapshot, policy->kpi);
    const auto text = log_->text(*decision.edited_output,
                                 item.id + ":edit:" + std::to_string(item.history.size()));
    append_event(item.id, EventKind::Snapshot,
                 {{"stage", "review_edit"}, {"output", text}, {"metrics", edited_snapshot->to_json()}},
                 decision.reviewer_id, version);
    output_ref = audit::text_ref(text);
  }

  json edits = json::array();
  for (const auto& e : decision.term_edits) edits.push_back({{"from", e.from}, {"to", e.to}});
  json payload = {{"verdict", verdict_name(decision.verdict)},
                  {"reviewer_id", decision.reviewer_id},
                  {"rationale", decision.rationale},
                  {"checklist", decision.checklist.to_json()},
                  {"term_edits", edits},
                  {"candidate_ref", candidate_ref},
                  {"output_ref", output_ref},
                  {"adaptation_signal", decision.verdict == Verdict::ApproveWithEdits}};
  commit(s, {Event::ReviewRecorded, decision.verdict, compliance.compliant, item.high_risk},
         EventKind::ReviewDecision, payload, decision.reviewer_id, version);
  item.checklist = decision.checklist;
  if (!approves(decision.verdict)) return item;

  if (decision.edited_output) {
    item.output = *decision.edited_output;
    item.output_ref = output_ref;
    item.snapshot = edited_snapshot;
    item.cqi = edited_cqi;
  }
  json delivery = {{"output_ref", item.output_ref}};
  delivery["cqi"] = item.cqi ? json(*item.cqi) : json(nullptr);
  commit(s, plain(Event::Released), EventKind::Delivery, delivery, "system", version);
  {
    std::lock_guard plock(policy_mutex_);
    if (policy_->version_string() == version) release_pending_ = false;
  }
  if (item.cqi) delivered(*item.cqi);
  return item;
}

WorkItem Pipeline::regenerate(const std::string& id, const std::optional<std::string>& output) {
  auto& s = slot(id);
  std::lock_guard lock(s.mutex);
  auto& item = s.item;
  if (item.state != State::RegenerationRequested) {
    throw Error(ErrorCode::IllegalTransition,
                "cannot regenerate " + id + " in state " + std::string(state_name(item.state)));
  }
  const auto policy = this->policy();
  const int attempt = item.regenerations + 1;
  std::string text;
  std::string generator = "external";
  if (output) {
    if (trim(*output).empty() || !utf8::is_valid(*output)) {
      throw Error(ErrorCode::InvalidInput, "regenerated output must be non-empty UTF-8");
    }
    text = *output;
  } else {
    text = generator_->generate({item.source, item.profile, item.domain, policy->constraints, attempt},
                                policy->glossary);
    generator = generator_->id();
  }
  const auto stored = log_->text(text, item.id + ":output:" + std::to_string(attempt));
  commit(s, plain(Event::Regenerated), EventKind::Snapshot,
         {{"stage", "generation"}, {"output", stored}, {"generator", generator}, {"attempt", attempt}},
         "system", policy->version_string());
  item.output = text;
  item.output_ref = audit::text_ref(stored);
  item.regenerations = attempt;
  item.snapshot.reset();
  item.rule_outcome.reset();
  item.cqi.reset();
  item.routing.reset();
  item.checklist.reset();
  return item;
}

std::vector<std::string> Pipeline::consolidate_adaptation(const std::string& actor) {
  std::vector<std::string> ids;
  for (const auto& item : items(State::AdaptationQueued)) ids.push_back(item.id);
  const auto version = policy()->version_string();
  std::vector<std::string> moved;
  for (const auto& id : ids) {
    auto& s = slot(id);
    std::lock_guard lock(s.mutex);
    if (s.item.state != State::AdaptationQueued) continue;  // raced with another caller
    commit(s, plain(Event::AdaptationConsolidated), EventKind::AdaptationExport, {{"policy_version", version}}, actor,
           version);
    moved.push_back(id);
  }
  return moved;
}

checklist::ChecklistResult Pipeline::prefill(const std::string& id, const std::optional<std::string>& text) const {
  WorkItem item = get(id);
  const auto policy = this->policy();
  const auto output = text.value_or(item.output);
  const auto unit = metrics::segment(output, item.language);
  metrics::MetricSnapshot snapshot;
  if (!text && item.snapshot) {
    snapshot = *item.snapshot;
  } else {
    snapshot = engine_.snapshot({item.source, output, item.language, item.domain, item.references,
                                 item.external_metrics});
  }
  checklist::PrefillOptions options;
  options.max_sentence_tokens = engine_.config().max_sentence_tokens;
  return checklist::auto_prefill(unit, snapshot, policy->glossary.terms(), policy->version_string(), options);
}

std::uint64_t Pipeline::apply_policy(const PolicyChange& change, const std::string& actor) {
  std::lock_guard lock(policy_mutex_);
  auto next = apply_change(*policy_, change);
  json payload = {{"previous_version", policy_->version_string()},
                  {"version", next.version_string()},
                  {"rules_version", next.rules.version},
                  {"change", change.to_json()}};
  append_event("", EventKind::PolicyChange, payload, actor, next.version_string());
  if (next.governance.trend_window != policy_->governance.trend_window) {
    TrendTracker fresh(next.governance.trend_window);
    for (const auto cqi : delivered_cqis_) fresh.record_delivered_cqi(cqi);
    trend_ = fresh;
  }
  release_pending_ = next.governance.mandatory_review_after_release;
  policy_ = std::make_shared<const PolicyBundle>(std::move(next));
  return policy_->version;
}

std::uint64_t Pipeline::record_kpis(const std::vector<kpi::KpiRecord>& records, const std::string& actor) {
  json rows = json::array();
  std::optional<bool> kpi5;
  for (const auto& r : records) {
    rows.push_back(r.to_json());
    if (r.id == kpi::KpiId::Kpi5) kpi5 = r.satisfied;
  }
  std::lock_guard lock(policy_mutex_);
  audit::NewEvent e;
  e.kind = EventKind::KpiSnapshot;
  e.policy_version = policy_->version_string();
  e.actor = actor;
  e.ts = clock_();
  e.payload = {{"records", rows}};
  const auto seq = log_->append(e);
  if (kpi5) trend_.record_kpi5(*kpi5);
  return seq;
}

void Pipeline::delivered(double cqi) {
  std::lock_guard lock(policy_mutex_);
  delivered_cqis_.push_back(cqi);
  trend_.record_delivered_cqi(cqi);
}

WorkItem Pipeline::get(const std::string& id) const {
  auto& s = slot(id);
  std::lock_guard lock(s.mutex);
  return s.item;
}

std::vector<WorkItem> Pipeline::items(std::optional<State> state) const {
  std::vector<Slot*> slots;
  {
    std::lock_guard lock(items_mutex_);
    for (const auto& id : order_) slots.push_back(items_.at(id).get());
  }
  std::vector<WorkItem> out;
  for (auto* s : slots) {
    std::lock_guard lock(s->mutex);
    if (!state || s->item.state == *state) out.push_back(s->item);
  }
  return out;
}

std::shared_ptr<const PolicyBundle> Pipeline::policy() const {
  std::lock_guard lock(policy_mutex_);
  return policy_;
}

bool Pipeline::release_review_pending() const {
  std::lock_guard lock(policy_mutex_);
  return release_pending_;
}

TrendSnapshot Pipeline::trend() const {
  std::lock_guard lock(policy_mutex_);
  return trend_.snapshot();
}

std::vector<double> Pipeline::delivered_cqis() const {
  std::lock_guard lock(policy_mutex_);
  return delivered_cqis_;
}

}  // namespace plainloop::workflow
