#include "plainloop/workflow/policy_store.hpp"

#include <algorithm>

#include "plainloop/common/error.hpp"
#include "plainloop/metrics/metric_config.hpp"
#include "plainloop/ruledsl/parse.hpp"

namespace plainloop::workflow {

using nlohmann::json;

namespace {

json governance_json(const GovernancePolicy& g) {
  return {{"sampling_rate", g.sampling_rate},
          {"high_risk_domains", g.high_risk_domains},
          {"mandatory_review_after_release", g.mandatory_review_after_release},
          {"rng_seed", g.rng_seed},
          {"regeneration_limit", g.regeneration_limit},
          {"trend_cycles", g.trend_cycles},
          {"trend_window", g.trend_window}};
}

GovernancePolicy governance_from_json(const json& j, GovernancePolicy base) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidInput, "governance must be an object");
  try {
    if (j.contains("sampling_rate")) base.sampling_rate = j["sampling_rate"].get<double>();
    if (j.contains("high_risk_domains")) {
      base.high_risk_domains = j["high_risk_domains"].get<std::set<std::string>>();
    }
    if (j.contains("mandatory_review_after_release")) {
      base.mandatory_review_after_release = j["mandatory_review_after_release"].get<bool>();
    }
    if (j.contains("rng_seed")) base.rng_seed = j["rng_seed"].get<std::uint64_t>();
    if (j.contains("regeneration_limit")) base.regeneration_limit = j["regeneration_limit"].get<int>();
    if (j.contains("trend_cycles")) base.trend_cycles = j["trend_cycles"].get<int>();
    if (j.contains("trend_window")) base.trend_window = j["trend_window"].get<int>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("malformed governance: ") + e.what());
  }
  base.validate();
  return base;
}

}  // namespace

json PolicyBundle::describe() const {
  json glossary_json = json::array();
  for (const auto& e : glossary.entries()) {
    glossary_json.push_back({{"term", e.term}, {"substitute", e.substitute}, {"note", e.note}});
  }
  return {{"version", version_string()},
          {"rules_version", rules.version},
          {"rules", ruledsl::print_rules(rules)},
          {"governance", governance_json(governance)},
          {"glossary", glossary_json},
          {"constraints", constraints},
          {"missing_data", missing_data == ruledsl::MissingDataPolicy::Escalate ? "escalate" : "ignore"},
          {"kpi", {{"gamma", kpi.gamma},
                   {"weights", {kpi.weights.readability, kpi.weights.fidelity, kpi.weights.structure}},
                   {"theta_profile", kpi.theta_profile}}}};
}

PolicyBundle PolicyBundle::from_config(const KeyValueConfig& config, const std::string& base_dir) {
  PolicyBundle bundle;
  if (const auto rules = config.get("policy.rules")) {
    bundle.rules = ruledsl::load_rules(metrics::resolve_path(base_dir, *rules));
  }
  bundle.thresholds = ruledsl::ThresholdTable::from_config(config);
  bundle.kpi = kpi::KpiConfig::from_config(config);
  bundle.governance = GovernancePolicy::from_config(config);
  if (const auto glossary = config.get("policy.glossary")) {
    bundle.glossary = Glossary::load_tsv(metrics::resolve_path(base_dir, *glossary));
  }
  bundle.constraints = config.get_list("policy.constraints");
  const auto missing = config.get_or("policy.missing_data", "escalate");
  if (missing == "escalate") {
    bundle.missing_data = ruledsl::MissingDataPolicy::Escalate;
  } else if (missing == "ignore") {
    bundle.missing_data = ruledsl::MissingDataPolicy::Ignore;
  } else {
    throw Error(ErrorCode::InvalidConfig, "policy.missing_data must be escalate or ignore");
  }
  return bundle;
}

bool PolicyChange::empty() const {
  return !rules_text && thresholds.empty() && !governance && !kpi && glossary_additions.empty() &&
         constraint_additions.empty();
}

json PolicyChange::to_json() const {
  json j = json::object();
  if (rules_text) j["rules"] = *rules_text;
  if (!thresholds.empty()) {
    json rows = json::array();
    for (const auto& t : thresholds) {
      rows.push_back({{"profile", t.profile}, {"domain", t.domain}, {"symbol", t.symbol},
                      {"value", t.value}, {"note", t.note}});
    }
    j["thresholds"] = rows;
  }
  if (governance) j["governance"] = governance_json(*governance);
  if (kpi) j["kpi"] = {{"gamma", kpi->gamma}, {"theta_profile", kpi->theta_profile}};
  if (!glossary_additions.empty()) {
    json rows = json::array();
    for (const auto& e : glossary_additions) {
      rows.push_back({{"term", e.term}, {"substitute", e.substitute}, {"note", e.note}});
    }
    j["glossary_additions"] = rows;
  }
  if (!constraint_additions.empty()) j["constraint_additions"] = constraint_additions;
  if (!reason.empty()) j["reason"] = reason;
  return j;
}

PolicyChange PolicyChange::from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidInput, "policy change must be an object");
  static const std::set<std::string> known = {"rules", "thresholds", "governance", "glossary_additions",
                                              "constraint_additions", "reason"};
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw Error(ErrorCode::InvalidInput, "unknown policy field: " + key);
  }
  PolicyChange change;
  try {
    if (j.contains("rules")) change.rules_text = j["rules"].get<std::string>();
    if (j.contains("thresholds")) {
      for (const auto& row : j["thresholds"]) {
        change.thresholds.push_back({row.at("profile").get<std::string>(), row.at("domain").get<std::string>(),
                                     row.at("symbol").get<std::string>(), row.at("value").get<double>(),
                                     row.value("note", std::string())});
      }
    }
    if (j.contains("governance")) change.governance = governance_from_json(j["governance"], {});
    if (j.contains("glossary_additions")) {
      for (const auto& row : j["glossary_additions"]) {
        change.glossary_additions.push_back({row.at("term").get<std::string>(),
                                             row.at("substitute").get<std::string>(),
                                             row.value("note", std::string())});
      }
    }
    if (j.contains("constraint_additions")) {
      change.constraint_additions = j["constraint_additions"].get<std::vector<std::string>>();
    }
    change.reason = j.value("reason", std::string());
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("malformed policy change: ") + e.what());
  }
  return change;
}

PolicyBundle apply_change(const PolicyBundle& current, const PolicyChange& change) {
  if (change.empty()) throw Error(ErrorCode::InvalidInput, "policy change is empty");
  PolicyBundle next = current;
  next.version = current.version + 1;
  if (change.rules_text) next.rules = ruledsl::parse_rules(*change.rules_text);
  for (const auto& t : change.thresholds) {
    if (t.symbol.empty() || t.profile.empty() || t.domain.empty()) {
      throw Error(ErrorCode::InvalidInput, "threshold setting needs profile, domain and symbol");
    }
    next.thresholds.set(t.profile, t.domain, t.symbol, t.value, t.note);
    if (t.symbol == "theta_profile" && t.domain == ruledsl::kWildcard) next.kpi.theta_profile[t.profile] = t.value;
  }
  if (change.governance) {
    change.governance->validate();
    next.governance = *change.governance;
  }
  if (change.kpi) {
    change.kpi->validate();
    next.kpi = *change.kpi;
  }
  for (const auto& e : change.glossary_additions) {
    if (trim(e.term).empty() || trim(e.substitute).empty()) {
      throw Error(ErrorCode::InvalidInput, "glossary addition needs term and substitute");
    }
    next.glossary.add(e);
  }
  for (const auto& c : change.constraint_additions) {
    if (std::find(next.constraints.begin(), next.constraints.end(), c) == next.constraints.end()) {
      next.constraints.push_back(c);
    }
  }
  return next;
}

}  // namespace plainloop::workflow
