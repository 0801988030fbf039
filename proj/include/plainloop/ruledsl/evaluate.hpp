#pragma once

#include <json.hpp>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "plainloop/ruledsl/ast.hpp"
#include "plainloop/ruledsl/thresholds.hpp"

namespace plainloop::ruledsl {

struct Resolution {
  std::string rule_id;
  std::string symbol;
  double value = 0.0;
  std::string profile;  // matched table row
  std::string domain;
  std::string note;

  bool operator==(const Resolution&) const = default;
};

// Rules with every threshold symbol replaced by its number and every
// `profile` / `domain` key parameter replaced by the concrete value.
struct ResolvedRuleSet {
  std::vector<Rule> rules;
  std::string version;
  std::string profile;
  std::string domain;
  std::vector<Resolution> provenance;
};

// Throws UnresolvedSymbol when a symbol the table declares has no row for
// (profile, domain), InvalidInterval when a resolved interval is empty.
ResolvedRuleSet resolve(const RuleSet& rules, const ThresholdTable& table, const std::string& profile,
                        const std::string& domain);
ResolvedRuleSet resolve(const ResolvedRuleSet& rules, const ThresholdTable& table);

enum class Truth { False, True, Unknown };

enum class RuleStatus { Fired, NotFired, Indeterminate };

std::string_view truth_name(Truth t);
std::string_view rule_status_name(RuleStatus s);

struct ComparisonRecord {
  std::string lhs;  // operand as printed, keys lowercased
  std::optional<double> lhs_value;
  std::string op;   // ">", "<", ">=", "<=", "==", "within"
  std::string rhs;  // operand as printed, or "[lo, hi]"
  std::optional<double> rhs_value;  // lower bound for "within"
  std::optional<double> rhs_high;   // "within" only
  Truth verdict = Truth::Unknown;

  bool operator==(const ComparisonRecord&) const = default;
};

struct RuleTrace {
  std::string rule_id;
  RuleStatus status = RuleStatus::NotFired;
  std::vector<ComparisonRecord> comparisons;
  std::vector<std::string> missing;
  std::string rationale;

  bool operator==(const RuleTrace&) const = default;
};

struct FiredRule {
  std::string rule_id;
  std::map<std::string, double> operands;  // bound keys the rule read
  Action action;

  bool operator==(const FiredRule&) const = default;
};

struct IndeterminateRule {
  std::string rule_id;
  std::vector<std::string> missing;

  bool operator==(const IndeterminateRule&) const = default;
};

struct RuleOutcome {
  std::vector<FiredRule> fired;
  std::vector<std::string> not_fired;
  std::vector<IndeterminateRule> indeterminate;
  std::vector<Action> actions;  // deduplicated, first-seen order
  std::vector<RuleTrace> trace;
  bool missing_data_action = false;  // the missing-data policy added an action

  bool fired_rule(const std::string& id) const;
  bool escalates() const;

  bool operator==(const RuleOutcome&) const = default;
};

enum class MissingDataPolicy { Escalate, Ignore };

struct EvaluateOptions {
  MissingDataPolicy missing_data = MissingDataPolicy::Escalate;
};

// Kleene three-valued evaluation. Binding keys match case-insensitively;
// a parameterized key "f(x)" falls back to "f". Throws InvalidInput for
// non-finite binding values.
RuleOutcome evaluate(const ResolvedRuleSet& rules, const std::map<std::string, double>& bindings,
                     const EvaluateOptions& options = {});

// Truth value of one condition, without building a trace.
Truth evaluate_condition(const Condition& condition, const std::map<std::string, double>& bindings);

}  // namespace plainloop::ruledsl
