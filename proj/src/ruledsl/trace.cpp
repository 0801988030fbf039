#include "plainloop/common/error.hpp"
#include "plainloop/ruledsl/trace.hpp"

namespace plainloop::ruledsl {

namespace {

using nlohmann::json;

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> read_optional(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

Truth parse_truth(const std::string& s) {
  for (const auto t : {Truth::False, Truth::True, Truth::Unknown}) {
    if (truth_name(t) == s) return t;
  }
  throw Error(ErrorCode::InvalidInput, "unknown verdict '" + s + "'");
}

RuleStatus parse_status(const std::string& s) {
  for (const auto st : {RuleStatus::Fired, RuleStatus::NotFired, RuleStatus::Indeterminate}) {
    if (rule_status_name(st) == s) return st;
  }
  throw Error(ErrorCode::InvalidInput, "unknown rule status '" + s + "'");
}

}  // namespace

json outcome_to_json(const RuleOutcome& outcome) {
  json fired = json::array();
  for (const auto& f : outcome.fired) {
    fired.push_back({{"rule", f.rule_id}, {"operands", f.operands}, {"action", f.action.label()}});
  }
  json indeterminate = json::array();
  for (const auto& i : outcome.indeterminate) {
    indeterminate.push_back({{"rule", i.rule_id}, {"missing", i.missing}});
  }
  json actions = json::array();
  for (const auto& a : outcome.actions) actions.push_back(a.label());
  json trace = json::array();
  for (const auto& t : outcome.trace) {
    json comparisons = json::array();
    for (const auto& c : t.comparisons) {
      json record = {{"lhs", c.lhs},
                     {"lhs_value", optional_number(c.lhs_value)},
                     {"op", c.op},
                     {"rhs", c.rhs},
                     {"rhs_value", optional_number(c.rhs_value)},
                     {"verdict", truth_name(c.verdict)}};
      if (c.op == "within") record["rhs_high"] = optional_number(c.rhs_high);
      comparisons.push_back(std::move(record));
    }
    trace.push_back({{"rule", t.rule_id},
                     {"status", rule_status_name(t.status)},
                     {"comparisons", std::move(comparisons)},
                     {"missing", t.missing},
                     {"rationale", t.rationale}});
  }
  return {{"fired", std::move(fired)},
          {"not_fired", outcome.not_fired},
          {"indeterminate", std::move(indeterminate)},
          {"actions", std::move(actions)},
          {"missing_data_action", outcome.missing_data_action},
          {"trace", std::move(trace)}};
}

RuleOutcome outcome_from_json(const json& j) {
  RuleOutcome o;
  for (const auto& f : j.at("fired")) {
    o.fired.push_back({f.at("rule").get<std::string>(), f.at("operands").get<std::map<std::string, double>>(),
                       Action::parse_label(f.at("action").get<std::string>())});
  }
  o.not_fired = j.at("not_fired").get<std::vector<std::string>>();
  for (const auto& i : j.at("indeterminate")) {
    o.indeterminate.push_back({i.at("rule").get<std::string>(), i.at("missing").get<std::vector<std::string>>()});
  }
  for (const auto& a : j.at("actions")) o.actions.push_back(Action::parse_label(a.get<std::string>()));
  o.missing_data_action = j.at("missing_data_action").get<bool>();
  for (const auto& t : j.at("trace")) {
    RuleTrace trace;
    trace.rule_id = t.at("rule").get<std::string>();
    trace.status = parse_status(t.at("status").get<std::string>());
    for (const auto& c : t.at("comparisons")) {
      trace.comparisons.push_back({c.at("lhs").get<std::string>(), read_optional(c, "lhs_value"),
                                   c.at("op").get<std::string>(), c.at("rhs").get<std::string>(),
                                   read_optional(c, "rhs_value"), read_optional(c, "rhs_high"),
                                   parse_truth(c.at("verdict").get<std::string>())});
    }
    trace.missing = t.at("missing").get<std::vector<std::string>>();
    trace.rationale = t.at("rationale").get<std::string>();
    o.trace.push_back(std::move(trace));
  }
  return o;
}

std::vector<std::string> rationale_lines(const RuleOutcome& outcome) {
  std::vector<std::string> out;
  for (const auto& t : outcome.trace) out.push_back(t.rationale);
  return out;
}

}  // namespace plainloop::ruledsl
