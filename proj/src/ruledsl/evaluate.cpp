#include <algorithm>
#include <cmath>
#include <set>

#include "plainloop/common/error.hpp"
#include "plainloop/common/format.hpp"
#include "plainloop/common/utf8.hpp"
#include "plainloop/ruledsl/evaluate.hpp"

namespace plainloop::ruledsl {

std::string_view truth_name(Truth t) {
  switch (t) {
    case Truth::False: return "false";
    case Truth::True: return "true";
    case Truth::Unknown: return "unknown";
  }
  return "?";
}

std::string_view rule_status_name(RuleStatus s) {
  switch (s) {
    case RuleStatus::Fired: return "fired";
    case RuleStatus::NotFired: return "not_fired";
    case RuleStatus::Indeterminate: return "indeterminate";
  }
  return "?";
}

bool RuleOutcome::fired_rule(const std::string& id) const {
  return std::any_of(fired.begin(), fired.end(), [&](const FiredRule& f) { return f.rule_id == id; });
}

bool RuleOutcome::escalates() const {
  return std::any_of(actions.begin(), actions.end(),
                     [](const Action& a) { return a.kind == Action::Kind::Escalate; });
}

namespace {

std::map<std::string, double> normalize(const std::map<std::string, double>& bindings) {
  std::map<std::string, double> out;
  for (const auto& [key, value] : bindings) {
    if (!std::isfinite(value)) {
      throw Error(ErrorCode::InvalidInput, "binding '" + key + "' is not a finite number");
    }
    const auto lower = utf8::to_lower(key);
    const auto [it, inserted] = out.emplace(lower, value);
    if (!inserted && it->second != value) {
      throw Error(ErrorCode::InvalidInput, "conflicting bindings for '" + lower + "'");
    }
  }
  return out;
}

Truth kleene_and(Truth a, Truth b) {
  if (a == Truth::False || b == Truth::False) return Truth::False;
  if (a == Truth::Unknown || b == Truth::Unknown) return Truth::Unknown;
  return Truth::True;
}

Truth kleene_or(Truth a, Truth b) {
  if (a == Truth::True || b == Truth::True) return Truth::True;
  if (a == Truth::Unknown || b == Truth::Unknown) return Truth::Unknown;
  return Truth::False;
}

std::string_view mark(Truth t) {
  switch (t) {
    case Truth::True: return "\xE2\x9C\x93";   // ✓
    case Truth::False: return "\xE2\x9C\x97";  // ✗
    case Truth::Unknown: return "?";
  }
  return "?";
}

class Evaluator {
 public:
  explicit Evaluator(const std::map<std::string, double>& bindings) : bindings_(bindings) {}

  std::set<std::string> missing;
  std::map<std::string, double> used;
  std::vector<ComparisonRecord> records;

  std::optional<double> value(const Operand& o) {
    switch (o.kind) {
      case Operand::Kind::Number: return o.number;
      case Operand::Kind::Name: {
        const auto key = o.binding_key();
        auto it = bindings_.find(key);
        if (it == bindings_.end() && o.param) it = bindings_.find(utf8::to_lower(o.name));
        if (it == bindings_.end()) {
          missing.insert(key);
          return std::nullopt;
        }
        used[it->first] = it->second;
        return it->second;
      }
      case Operand::Kind::Aggregate:
      case Operand::Kind::Sum: {
        std::vector<double> values;
        bool complete = true;
        for (const auto& arg : o.args) {
          const auto v = value(arg);
          if (v) values.push_back(*v);
          else complete = false;
        }
        if (!complete || values.empty()) return std::nullopt;
        if (o.kind == Operand::Kind::Sum || o.name == "combine" || o.name == "mean") {
          double total = 0;
          for (const double v : values) total += v;
          return o.kind == Operand::Kind::Sum ? total : total / static_cast<double>(values.size());
        }
        return o.name == "min" ? *std::min_element(values.begin(), values.end())
                               : *std::max_element(values.begin(), values.end());
      }
    }
    return std::nullopt;
  }

  // Evaluates every comparison (no short circuit) so the trace is complete.
  Truth condition(const Condition& c, std::string* rendered) {
    switch (c.kind) {
      case Condition::Kind::And:
      case Condition::Kind::Or: {
        const bool is_and = c.kind == Condition::Kind::And;
        Truth acc = is_and ? Truth::True : Truth::False;
        for (std::size_t i = 0; i < c.children.size(); ++i) {
          const auto& child = c.children[i];
          std::string text;
          const Truth t = condition(child, &text);
          acc = is_and ? kleene_and(acc, t) : kleene_or(acc, t);
          const bool wrap = child.kind == Condition::Kind::Or ||
                            (child.kind == Condition::Kind::And && is_and);
          if (i) *rendered += is_and ? " AND " : " OR ";
          *rendered += wrap ? "(" + text + ")" : text;
        }
        return acc;
      }
      case Condition::Kind::Compare: {
        const auto lhs = value(c.lhs);
        const auto rhs = value(c.rhs);
        const Truth t = lhs && rhs ? (compare(*lhs, c.comparator, *rhs) ? Truth::True : Truth::False)
                                   : Truth::Unknown;
        const std::string op(comparator_symbol(c.comparator));
        records.push_back({label(c.lhs), lhs, op, label(c.rhs), rhs, std::nullopt, t});
        *rendered = render(c.lhs) + " " + op + " " + render(c.rhs) + " " + std::string(mark(t));
        return t;
      }
      case Condition::Kind::Within: {
        const auto v = value(c.lhs);
        const auto lo = value(c.low);
        const auto hi = value(c.high);
        const Truth t = v && lo && hi ? (*lo <= *v && *v <= *hi ? Truth::True : Truth::False)
                                      : Truth::Unknown;
        records.push_back({label(c.lhs), v, "within", "[" + label(c.low) + ", " + label(c.high) + "]", lo, hi, t});
        *rendered = render(c.lhs) + " within [" + render(c.low) + ", " + render(c.high) + "] " +
                    std::string(mark(t));
        return t;
      }
    }
    return Truth::Unknown;
  }

 private:
  static std::string label(const Operand& o) {
    switch (o.kind) {
      case Operand::Kind::Number: return o.name.empty() ? format_number(o.number) : o.name;
      case Operand::Kind::Name: return o.binding_key();
      case Operand::Kind::Aggregate:
      case Operand::Kind::Sum: {
        std::string out = o.kind == Operand::Kind::Aggregate ? o.name + "(" : "";
        for (std::size_t i = 0; i < o.args.size(); ++i) {
          if (i) out += o.kind == Operand::Kind::Aggregate ? ", " : " + ";
          out += label(o.args[i]);
        }
        return o.kind == Operand::Kind::Aggregate ? out + ")" : out;
      }
    }
    return {};
  }

  std::string render(const Operand& o) {
    switch (o.kind) {
      case Operand::Kind::Number:
        return o.name.empty() ? format_number(o.number) : o.name + "=" + format_number(o.number);
      case Operand::Kind::Name: {
        const auto key = o.binding_key();
        auto it = bindings_.find(key);
        if (it == bindings_.end() && o.param) it = bindings_.find(utf8::to_lower(o.name));
        return key + "=" + (it == bindings_.end() ? std::string("?") : format_number(it->second));
      }
      case Operand::Kind::Aggregate:
      case Operand::Kind::Sum: {
        std::string out = o.kind == Operand::Kind::Aggregate ? o.name + "(" : "";
        for (std::size_t i = 0; i < o.args.size(); ++i) {
          if (i) out += o.kind == Operand::Kind::Aggregate ? ", " : " + ";
          out += render(o.args[i]);
        }
        return o.kind == Operand::Kind::Aggregate ? out + ")" : out;
      }
    }
    return {};
  }

  const std::map<std::string, double>& bindings_;
};

void add_action(std::vector<Action>& actions, const Action& action) {
  if (std::find(actions.begin(), actions.end(), action) == actions.end()) actions.push_back(action);
}

}  // namespace

Truth evaluate_condition(const Condition& condition, const std::map<std::string, double>& bindings) {
  const auto normalized = normalize(bindings);
  Evaluator evaluator(normalized);
  std::string ignored;
  return evaluator.condition(condition, &ignored);
}

RuleOutcome evaluate(const ResolvedRuleSet& rules, const std::map<std::string, double>& bindings,
                     const EvaluateOptions& options) {
  const auto normalized = normalize(bindings);
  RuleOutcome outcome;
  for (const auto& rule : rules.rules) {
    Evaluator evaluator(normalized);
    std::string body;
    const Truth t = evaluator.condition(rule.condition, &body);

    RuleTrace trace;
    trace.rule_id = rule.id;
    trace.comparisons = std::move(evaluator.records);
    trace.missing.assign(evaluator.missing.begin(), evaluator.missing.end());
    std::string suffix;
    switch (t) {
      case Truth::True:
        trace.status = RuleStatus::Fired;
        outcome.fired.push_back({rule.id, evaluator.used, rule.action});
        add_action(outcome.actions, rule.action);
        suffix = rule.action.label();
        break;
      case Truth::False:
        trace.status = RuleStatus::NotFired;
        outcome.not_fired.push_back(rule.id);
        suffix = "no action";
        break;
      case Truth::Unknown: {
        trace.status = RuleStatus::Indeterminate;
        outcome.indeterminate.push_back({rule.id, trace.missing});
        std::string keys;
        for (const auto& k : trace.missing) keys += (keys.empty() ? "" : ", ") + k;
        suffix = "INDETERMINATE (missing: " + keys + ")";
        break;
      }
    }
    trace.rationale = rule.id + ": " + body + " \xE2\x86\x92 " + suffix;  // →
    outcome.trace.push_back(std::move(trace));
  }
  if (!outcome.indeterminate.empty() && options.missing_data == MissingDataPolicy::Escalate) {
    add_action(outcome.actions, Action::escalate());
    outcome.missing_data_action = true;
  }
  return outcome;
}

}  // namespace plainloop::ruledsl
