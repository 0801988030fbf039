#pragma once

#include <array>
#include <json.hpp>
#include <optional>
#include <string>
#include <string_view>

namespace plainloop::workflow {

// State and event names are part of the public API and the audit format.
enum class State {
  Submitted,
  Generated,
  Evaluated,
  RuleChecked,
  Escalated,
  InReview,
  Approved,
  RegenerationRequested,
  Delivered,
  AdaptationQueued,
};

inline constexpr std::array<State, 10> kStates = {
    State::Submitted,       State::Generated,          State::Evaluated,
    State::RuleChecked,     State::Escalated,          State::InReview,
    State::Approved,        State::RegenerationRequested, State::Delivered,
    State::AdaptationQueued};

enum class Event {
  SnapshotReady,
  RulesEvaluated,
  EscalationTriggered,
  AutoApproved,
  ReviewAssigned,
  ReviewRecorded,
  Regenerated,
  AdaptationSignaled,
  AdaptationConsolidated,
  Released,
};

inline constexpr std::array<Event, 10> kEvents = {
    Event::SnapshotReady,  Event::RulesEvaluated, Event::EscalationTriggered, Event::AutoApproved,
    Event::ReviewAssigned, Event::ReviewRecorded, Event::Regenerated,         Event::AdaptationSignaled,
    Event::AdaptationConsolidated, Event::Released};

enum class Verdict { Approve, ApproveWithEdits, RequestRegeneration };

inline constexpr std::array<Verdict, 3> kVerdicts = {Verdict::Approve, Verdict::ApproveWithEdits,
                                                     Verdict::RequestRegeneration};

std::string_view state_name(State s);
std::string_view event_name(Event e);
std::string_view verdict_name(Verdict v);  // approve, approve_with_edits, request_regeneration
// Throw InvalidInput on unknown names.
State parse_state(std::string_view name);
Event parse_event(std::string_view name);
Verdict parse_verdict(std::string_view name);

inline bool approves(Verdict v) { return v != Verdict::RequestRegeneration; }

struct Transition {
  State from = State::Submitted;
  Event event = Event::Regenerated;
  State to = State::Generated;
  std::optional<Verdict> verdict;  // ReviewRecorded only
  bool compliant = false;          // checklist compliance, ReviewRecorded only

  nlohmann::json to_json() const;
  static Transition from_json(const nlohmann::json& j);
  bool operator==(const Transition&) const = default;
};

}  // namespace plainloop::workflow
