#include "plainloop/workflow/transitions.hpp"

#include "plainloop/common/error.hpp"

namespace plainloop::workflow {

using Guard = RelationEntry::Guard;

const std::vector<RelationEntry>& transition_relation() {
  static const std::vector<RelationEntry> relation = {
      {State::Submitted, Event::Regenerated, State::Generated, Guard::None},
      {State::Generated, Event::SnapshotReady, State::Evaluated, Guard::None},
      {State::Evaluated, Event::RulesEvaluated, State::RuleChecked, Guard::None},
      {State::RuleChecked, Event::EscalationTriggered, State::Escalated, Guard::None},
      {State::RuleChecked, Event::AutoApproved, State::Approved, Guard::NotHighRisk},
      {State::RuleChecked, Event::AdaptationSignaled, State::AdaptationQueued, Guard::None},
      {State::Escalated, Event::ReviewAssigned, State::InReview, Guard::None},
      {State::InReview, Event::ReviewRecorded, State::Approved, Guard::ApproveCompliant},
      {State::InReview, Event::ReviewRecorded, State::RegenerationRequested, Guard::RegenerationVerdict},
      {State::Approved, Event::Released, State::Delivered, Guard::None},
      {State::RegenerationRequested, Event::Regenerated, State::Generated, Guard::None},
      {State::AdaptationQueued, Event::AdaptationConsolidated, State::RegenerationRequested, Guard::None},
  };
  return relation;
}

bool guard_holds(Guard guard, const TransitionInput& input) {
  switch (guard) {
    case Guard::None:
      return !input.verdict;
    case Guard::NotHighRisk:
      return !input.verdict && !input.high_risk;
    case Guard::ApproveCompliant:
      return input.verdict && approves(*input.verdict) && input.compliant;
    case Guard::RegenerationVerdict:
      return input.verdict == Verdict::RequestRegeneration;
  }
  return false;
}

std::optional<State> next_state(State from, const TransitionInput& input) {
  for (const auto& entry : transition_relation()) {
    if (entry.from == from && entry.event == input.event && guard_holds(entry.guard, input)) {
      return entry.to;
    }
  }
  return std::nullopt;
}

Transition apply_transition(State from, const TransitionInput& input) {
  const auto to = next_state(from, input);
  if (!to) {
    std::string message = "illegal transition: " + std::string(state_name(from)) + " + " +
                          std::string(event_name(input.event));
    if (input.verdict) message += " [" + std::string(verdict_name(*input.verdict)) + "]";
    throw Error(ErrorCode::IllegalTransition, message);
  }
  Transition t{from, input.event, *to, input.verdict, input.verdict ? input.compliant : false};
  return t;
}

bool is_terminal(State s) { return s == State::Delivered; }

}  // namespace plainloop::workflow
