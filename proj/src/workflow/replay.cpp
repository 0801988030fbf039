#include "plainloop/workflow/replay.hpp"

#include "plainloop/audit/log.hpp"
#include "plainloop/common/error.hpp"
#include "plainloop/workflow/transitions.hpp"

namespace plainloop::workflow {

using audit::EventKind;
using nlohmann::json;

namespace {

std::uint64_t version_number(const std::string& v, std::uint64_t seq) {
  try {
    std::size_t used = 0;
    const auto n = std::stoull(v, &used);
    if (used == v.size()) return n;
  } catch (const std::exception&) {
  }
  throw LogError(ErrorCode::DivergentState, seq, "policy_version is not a number: " + v);
}

}  // namespace

json ReplayedItem::to_json() const {
  json h = json::array();
  for (const auto& t : history) h.push_back(t.to_json());
  return {{"state", state_name(state)}, {"history", h},          {"policy_version", policy_version},
          {"high_risk", high_risk},     {"output_ref", output_ref}, {"regenerations", regenerations}};
}

ReplayState replay(const std::vector<audit::AuditEvent>& events) {
  ReplayState items;
  for (std::size_t i = 0; i < events.size(); ++i) {
    const auto& e = events[i];
    if (e.seq != i + 1) throw LogError(ErrorCode::CorruptLog, i + 1, "sequence gap");
    if (e.item_id.empty()) continue;  // policy and KPI events

    const auto divergent = [&](const std::string& why) {
      return LogError(ErrorCode::DivergentState, e.seq, e.item_id + ": " + why);
    };

    auto it = items.find(e.item_id);
    if (e.kind == EventKind::Submitted) {
      if (it != items.end()) throw divergent("submitted twice");
      ReplayedItem fresh;
      fresh.high_risk = e.payload.value("high_risk", false);
      it = items.emplace(e.item_id, fresh).first;
    } else if (it == items.end()) {
      throw divergent("event before submission");
    }
    auto& item = it->second;

    if (!item.policy_version.empty() &&
        version_number(e.policy_version, e.seq) < version_number(item.policy_version, e.seq)) {
      throw divergent("policy version went backwards");
    }

    const auto t_it = e.payload.find("transition");
    if (t_it == e.payload.end()) continue;  // edits, redactions
    Transition recorded;
    try {
      recorded = Transition::from_json(*t_it);
    } catch (const Error& err) {
      throw divergent(err.what());
    }
    if (recorded.from != item.state) {
      throw divergent("recorded from-state " + std::string(state_name(recorded.from)) + " but replay is in " +
                      std::string(state_name(item.state)));
    }
    const TransitionInput input{recorded.event, recorded.verdict, recorded.compliant, item.high_risk};
    const auto expected = next_state(item.state, input);
    if (!expected) throw divergent("transition not in the relation");
    if (*expected != recorded.to) {
      throw divergent("relation yields " + std::string(state_name(*expected)) + ", log records " +
                      std::string(state_name(recorded.to)));
    }
    item.state = recorded.to;
    item.history.push_back(recorded);
    item.policy_version = e.policy_version;

    if (recorded.event == Event::Regenerated && recorded.from == State::RegenerationRequested) {
      ++item.regenerations;
    }
    const auto output = e.payload.find("output");
    if (recorded.event == Event::Regenerated && output != e.payload.end()) {
      try {
        item.output_ref = audit::text_ref(*output);
      } catch (const Error&) {
        throw divergent("output is not a text object");
      }
    }
    if (e.kind == EventKind::ReviewDecision && recorded.verdict && approves(*recorded.verdict)) {
      item.output_ref = e.payload.value("output_ref", item.output_ref);
    }
  }
  return items;
}

ReplayState replay_lines(const std::vector<std::string>& lines) {
  return replay(audit::verify_lines(lines));
}

ReplayedItem summarize(const WorkItem& item) {
  ReplayedItem r;
  r.state = item.state;
  r.history = item.history;
  r.policy_version = item.policy_version;
  r.high_risk = item.high_risk;
  r.output_ref = item.output_ref;
  r.regenerations = item.regenerations;
  return r;
}

ReplayState live_state(const Pipeline& pipeline) {
  ReplayState out;
  for (const auto& item : pipeline.items()) out.emplace(item.id, summarize(item));
  return out;
}

}  // namespace plainloop::workflow
