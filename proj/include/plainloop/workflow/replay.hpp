#pragma once

#include <map>
#include <string>
#include <vector>

#include "plainloop/audit/event.hpp"
#include "plainloop/workflow/pipeline.hpp"
#include "plainloop/workflow/states.hpp"

namespace plainloop::workflow {

// The part of a work item the audit log determines. Raw texts are not
// needed, so redacted logs replay to the same values.
struct ReplayedItem {
  State state = State::Submitted;
  std::vector<Transition> history;
  std::string policy_version;
  bool high_risk = false;
  std::string output_ref;
  int regenerations = 0;

  nlohmann::json to_json() const;
  bool operator==(const ReplayedItem&) const = default;
};

using ReplayState = std::map<std::string, ReplayedItem>;

// Re-applies every recorded transition through the transition relation.
// Throws LogError: CorruptLog for sequence problems, DivergentState for a
// recorded transition the relation does not produce, an event for an
// unknown item, or a policy version going backwards for one item.
ReplayState replay(const std::vector<audit::AuditEvent>& events);
// Verifies the hash chain first.
ReplayState replay_lines(const std::vector<std::string>& lines);

ReplayedItem summarize(const WorkItem& item);
ReplayState live_state(const Pipeline& pipeline);

}  // namespace plainloop::workflow
