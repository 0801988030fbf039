#include "plainloop/gateway/api.hpp"

#include <algorithm>

#include "plainloop/common/error.hpp"
#include "plainloop/common/utf8.hpp"
#include "plainloop/kpi/kpis.hpp"

namespace plainloop::gateway {

using nlohmann::json;

namespace {

ApiResponse error_response(int status, std::string_view code, const std::string& message) {
  return {status, {{"error", code}, {"message", message}}};
}

ApiResponse forbidden(const ApiSession& session) {
  return error_response(403, "Forbidden", "role " + std::string(role_name(session.role)) + " may not do this");
}

std::vector<std::string> path_segments(const std::string& path) {
  std::vector<std::string> out;
  for (auto& part : split(path, '/')) {
    if (!part.empty()) out.push_back(std::move(part));
  }
  return out;
}

json parse_body(const ApiRequest& request) {
  if (!utf8::is_valid(request.body)) throw Error(ErrorCode::InvalidInput, "request body is not valid UTF-8");
  const auto body = json::parse(request.body, nullptr, false);
  if (body.is_discarded()) throw Error(ErrorCode::InvalidInput, "request body is not valid JSON");
  return body;
}

bool flag(const ApiRequest& request, const std::string& key) {
  const auto it = request.query.find(key);
  return it != request.query.end() && (it->second == "true" || it->second == "1");
}

std::uint64_t seq_param(const ApiRequest& request, const std::string& key, std::uint64_t fallback) {
  const auto it = request.query.find(key);
  if (it == request.query.end() || it->second.empty()) return fallback;
  const auto& text = it->second;
  if (!std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; }) || text.size() > 19) {
    throw Error(ErrorCode::InvalidInput, key + " must be a sequence number");
  }
  return std::stoull(text);
}

json queue_entry(const workflow::WorkItem& item) {
  json reasons = json::array();
  if (item.routing) reasons = item.routing->reasons;
  json j = {{"id", item.id},         {"profile", item.profile},
            {"domain", item.domain}, {"state", workflow::state_name(item.state)},
            {"reasons", reasons},    {"high_risk", item.high_risk},
            {"policy_version", item.policy_version}};
  if (item.cqi) j["cqi"] = *item.cqi;
  return j;
}

}  // namespace

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownItem:
    case ErrorCode::RangeEmpty:
      return 404;
    case ErrorCode::IllegalTransition:
    case ErrorCode::NotInReview:
    case ErrorCode::RegenerationLimit:
    case ErrorCode::DuplicateItem:
    case ErrorCode::LegalHold:
      return 409;
    case ErrorCode::StorageFailure:
    case ErrorCode::ProviderUnavailable:
      return 503;
    case ErrorCode::CorruptLog:
    case ErrorCode::DivergentState:
      return 500;
    default:
      return 400;
  }
}

std::set<std::string> signal_profiles(const kpi::UserSignals& signals) {
  std::set<std::string> out;
  for (const auto& s : signals.comprehension) out.insert(s.profile);
  for (const auto& s : signals.synonym_judgments) out.insert(s.profile);
  for (const auto& s : signals.glossary) out.insert(s.profile);
  for (const auto& s : signals.cwi) out.insert(s.profile);
  return out;
}

json kpi_report(const kpi::UserSignals& signals, const kpi::KpiConfig& config,
                const std::set<std::string>& profiles, const std::string& timestamp) {
  json records = json::object();
  json bindings = json::object();
  for (const auto& profile : profiles) {
    const auto r = kpi::evaluate_kpis(signals, config, profile, timestamp);
    json list = json::array();
    for (const auto& record : r) list.push_back(record.to_json());
    records[profile] = list;
    bindings[profile] = kpi::kpi_bindings(r);
  }
  return {{"records", records}, {"bindings", bindings}};
}

ApiRouter::ApiRouter(workflow::Pipeline& pipeline, TokenTable tokens, std::optional<kpi::UserSignals> signals)
    : pipeline_(pipeline), tokens_(std::move(tokens)), signals_(std::move(signals)) {}

ApiResponse ApiRouter::handle(const ApiRequest& request) const {
  if (request.body.size() > kMaxBodyBytes) {
    return error_response(413, "PayloadTooLarge", "request body exceeds 1 MB");
  }
  const auto segments = path_segments(request.path);
  if (segments == std::vector<std::string>{"healthz"}) {
    if (request.method != "GET") return error_response(405, "MethodNotAllowed", request.method);
    return {200,
            {{"status", "ok"},
             {"policy_version", pipeline_.policy()->version_string()},
             {"audit_events", pipeline_.audit().size()}}};
  }
  const auto session = tokens_.authenticate(request.authorization);
  if (!session) return error_response(401, "Unauthorized", "missing or unknown bearer token");
  try {
    return dispatch(request, session);
  } catch (const Error& e) {
    return error_response(http_status(e.code()), error_code_name(e.code()), e.what());
  } catch (const std::exception& e) {
    return error_response(500, "Internal", e.what());
  }
}

ApiResponse ApiRouter::dispatch(const ApiRequest& request, const std::optional<ApiSession>& session) const {
  const auto segments = path_segments(request.path);
  const auto& method = request.method;
  const auto n = segments.size();
  auto not_allowed = [&] { return error_response(405, "MethodNotAllowed", method + " " + request.path); };

  if (n >= 1 && segments[0] == "items") {
    if (n == 1) {
      if (method != "POST") return not_allowed();
      if (session->role != Role::Operator) return forbidden(*session);
      return submit(request, *session);
    }
    const auto& id = segments[1];
    if (n == 2) {
      if (method != "GET") return not_allowed();
      return {200, pipeline_.get(id).to_json()};
    }
    if (n == 3 && segments[2] == "decision") {
      if (method != "POST") return not_allowed();
      if (session->role != Role::Reviewer) return forbidden(*session);
      return decision(id, request, *session);
    }
    if (n == 3 && segments[2] == "process") {
      if (method != "POST") return not_allowed();
      if (session->role != Role::Operator) return forbidden(*session);
      return {200, pipeline_.process(id).to_json()};
    }
    if (n == 3 && segments[2] == "regenerate") {
      if (method != "POST") return not_allowed();
      if (session->role != Role::Operator) return forbidden(*session);
      std::optional<std::string> output;
      if (!trim(request.body).empty()) {
        const auto body = parse_body(request);
        if (!body.is_object()) throw Error(ErrorCode::InvalidInput, "regeneration body must be an object");
        if (body.contains("output")) {
          if (!body["output"].is_string()) throw Error(ErrorCode::InvalidInput, "output must be a string");
          output = body["output"].get<std::string>();
        }
      }
      pipeline_.regenerate(id, output);
      return {200, pipeline_.process(id).to_json()};
    }
  }
  if (segments == std::vector<std::string>{"queue"}) {
    if (method != "GET") return not_allowed();
    if (session->role != Role::Reviewer) return forbidden(*session);
    return queue(request);
  }
  if (segments == std::vector<std::string>{"kpis"}) {
    if (method != "GET") return not_allowed();
    if (session->role == Role::Reviewer) return forbidden(*session);
    return kpis();
  }
  if (segments == std::vector<std::string>{"policies"}) {
    if (method == "GET") {
      auto body = pipeline_.policy()->describe();
      body["release_review_pending"] = pipeline_.release_review_pending();
      return {200, body};
    }
    if (method != "POST") return not_allowed();
    if (session->role != Role::Operator) return forbidden(*session);
    const auto change = workflow::PolicyChange::from_json(parse_body(request));
    if (change.empty()) throw Error(ErrorCode::InvalidInput, "policy change is empty");
    const auto version = pipeline_.apply_policy(change, session->name);
    return {201, {{"version", std::to_string(version)}, {"policy", pipeline_.policy()->describe()}}};
  }
  if (segments == std::vector<std::string>{"audit", "export"}) {
    if (method != "GET") return not_allowed();
    return audit_export(request, *session);
  }
  return error_response(404, "NotFound", "no route for " + request.path);
}

ApiResponse ApiRouter::submit(const ApiRequest& request, const ApiSession&) const {
  const auto submission = workflow::SubmitRequest::from_json(parse_body(request));
  const auto item =
      flag(request, "process") ? pipeline_.submit_and_process(submission) : pipeline_.submit(submission);
  return {201, item.to_json()};
}

ApiResponse ApiRouter::decision(const std::string& id, const ApiRequest& request, const ApiSession& session) const {
  auto d = workflow::ReviewDecision::from_json(parse_body(request));
  if (!d.item_id.empty() && d.item_id != id) {
    throw Error(ErrorCode::InvalidInput, "item_id in the body does not match the path");
  }
  d.item_id = id;
  if (d.reviewer_id.empty()) d.reviewer_id = session.reviewer_id;
  if (d.reviewer_id != session.reviewer_id) {
    return error_response(403, "Forbidden", "decisions are recorded under the session's reviewer id");
  }
  if (!d.checklist.reviewer_id) d.checklist.reviewer_id = session.reviewer_id;
  return {200, pipeline_.record_decision(d).to_json()};
}

ApiResponse ApiRouter::queue(const ApiRequest& request) const {
  auto state = workflow::State::InReview;
  if (const auto it = request.query.find("state"); it != request.query.end()) {
    try {
      state = workflow::parse_state(it->second);
    } catch (const Error&) {
      throw Error(ErrorCode::InvalidInput, "unknown state: " + it->second);
    }
  }
  auto items = pipeline_.items(state);
  // High-risk first; otherwise oldest submission first.
  std::stable_sort(items.begin(), items.end(),
                   [](const workflow::WorkItem& a, const workflow::WorkItem& b) { return a.high_risk && !b.high_risk; });
  json list = json::array();
  for (const auto& item : items) list.push_back(queue_entry(item));
  return {200, {{"state", workflow::state_name(state)}, {"items", list}}};
}

ApiResponse ApiRouter::kpis() const {
  const auto policy = pipeline_.policy();
  json body = {{"records", json::object()}, {"bindings", json::object()}};
  if (signals_) body = kpi_report(*signals_, policy->kpi, signal_profiles(*signals_), "");
  const auto trend = pipeline_.trend();
  body["cqi_series"] = pipeline_.delivered_cqis();
  body["gamma"] = policy->kpi.gamma;
  body["trend"] = {{"kpi5_unsatisfied_streak", trend.kpi5_unsatisfied_streak},
                   {"rolling_cqi", trend.rolling_cqi ? json(*trend.rolling_cqi) : json(nullptr)}};
  return {200, body};
}

ApiResponse ApiRouter::audit_export(const ApiRequest& request, const ApiSession& session) const {
  audit::ExportRole role;
  switch (session.role) {
    case Role::Auditor: role = audit::ExportRole::Auditor; break;
    case Role::Operator: role = audit::ExportRole::Operator; break;
    default: return forbidden(session);
  }
  const auto last_seq = pipeline_.audit().next_seq() - 1;
  const auto from = seq_param(request, "from", 1);
  const auto to = seq_param(request, "to", last_seq);
  if (from > to) throw Error(ErrorCode::InvalidInput, "from is after to");
  const auto jsonl = pipeline_.audit().export_range(from, to, role);
  json events = json::array();
  for (const auto& line : split(jsonl, '\n')) {
    if (!line.empty()) events.push_back(json::parse(line));
  }
  return {200, {{"role", audit::export_role_name(role)}, {"from", from}, {"to", to}, {"events", events}}};
}

}  // namespace plainloop::gateway
