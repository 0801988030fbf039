#include "plainloop/workflow/states.hpp"

#include "plainloop/common/error.hpp"

namespace plainloop::workflow {

namespace {

constexpr std::array<std::string_view, 10> kStateNames = {
    "Submitted", "Generated", "Evaluated", "RuleChecked", "Escalated", "InReview",
    "Approved",  "RegenerationRequested", "Delivered", "AdaptationQueued"};

constexpr std::array<std::string_view, 10> kEventNames = {
    "SnapshotReady",  "RulesEvaluated", "EscalationTriggered", "AutoApproved",
    "ReviewAssigned", "ReviewRecorded", "Regenerated",         "AdaptationSignaled",
    "AdaptationConsolidated", "Released"};

constexpr std::array<std::string_view, 3> kVerdictNames = {"approve", "approve_with_edits",
                                                           "request_regeneration"};

template <typename E, std::size_t N>
E parse_name(const std::array<std::string_view, N>& names, std::string_view name, const char* what) {
  for (std::size_t i = 0; i < N; ++i) {
    if (names[i] == name) return static_cast<E>(i);
  }
  throw Error(ErrorCode::InvalidInput, std::string("unknown ") + what + ": " + std::string(name));
}

}  // namespace

std::string_view state_name(State s) { return kStateNames[static_cast<std::size_t>(s)]; }
std::string_view event_name(Event e) { return kEventNames[static_cast<std::size_t>(e)]; }
std::string_view verdict_name(Verdict v) { return kVerdictNames[static_cast<std::size_t>(v)]; }

State parse_state(std::string_view name) { return parse_name<State>(kStateNames, name, "state"); }
Event parse_event(std::string_view name) { return parse_name<Event>(kEventNames, name, "event"); }
Verdict parse_verdict(std::string_view name) {
  return parse_name<Verdict>(kVerdictNames, name, "verdict");
}

nlohmann::json Transition::to_json() const {
  nlohmann::json j = {{"from", state_name(from)}, {"event", event_name(event)}, {"to", state_name(to)}};
  if (verdict) {
    j["verdict"] = verdict_name(*verdict);
    j["compliant"] = compliant;
  }
  return j;
}

Transition Transition::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidInput, "transition must be an object");
  Transition t;
  try {
    t.from = parse_state(j.at("from").get<std::string>());
    t.event = parse_event(j.at("event").get<std::string>());
    t.to = parse_state(j.at("to").get<std::string>());
    if (j.contains("verdict")) {
      t.verdict = parse_verdict(j.at("verdict").get<std::string>());
      t.compliant = j.at("compliant").get<bool>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("malformed transition: ") + e.what());
  }
  return t;
}

}  // namespace plainloop::workflow
