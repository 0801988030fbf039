#pragma once

#include <optional>
#include <vector>

#include "plainloop/workflow/states.hpp"

namespace plainloop::workflow {

// Everything the relation may look at besides the current state.
struct TransitionInput {
  Event event = Event::SnapshotReady;
  std::optional<Verdict> verdict;
  bool compliant = false;
  bool high_risk = false;
};

struct RelationEntry {
  State from;
  Event event;
  State to;
  // ReviewRecorded entries match on verdict kind.
  enum class Guard { None, NotHighRisk, ApproveCompliant, RegenerationVerdict };
  Guard guard = Guard::None;
};

const std::vector<RelationEntry>& transition_relation();

bool guard_holds(RelationEntry::Guard guard, const TransitionInput& input);

// nullopt when (state, input) is outside the relation.
std::optional<State> next_state(State from, const TransitionInput& input);

// Throws IllegalTransition naming the state and event.
Transition apply_transition(State from, const TransitionInput& input);

bool is_terminal(State s);

}  // namespace plainloop::workflow
