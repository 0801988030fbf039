#include <algorithm>
#include <set>

#include "plainloop/common/utf8.hpp"
#include "plainloop/ruledsl/evaluate.hpp"
#include "plainloop/ruledsl/lint.hpp"
#include "plainloop/ruledsl/parse.hpp"

namespace plainloop::ruledsl {

std::string_view severity_name(Severity s) {
  switch (s) {
    case Severity::Info: return "info";
    case Severity::Warning: return "warning";
    case Severity::Error: return "error";
  }
  return "?";
}

std::string_view diagnostic_code_name(DiagnosticCode c) {
  switch (c) {
    case DiagnosticCode::UnknownKey: return "UnknownKey";
    case DiagnosticCode::UnresolvableSymbol: return "UnresolvableSymbol";
    case DiagnosticCode::ExternalKey: return "ExternalKey";
    case DiagnosticCode::AlwaysTrue: return "AlwaysTrue";
    case DiagnosticCode::AlwaysFalse: return "AlwaysFalse";
    case DiagnosticCode::DuplicateCondition: return "DuplicateCondition";
  }
  return "?";
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diagonal = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const auto above = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diagonal + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diagonal = above;
    }
  }
  return row[b.size()];
}

namespace {

// Names that read as thresholds rather than measurements.
bool looks_like_symbol(const std::string& lower) {
  static const std::set<std::string> greek = {"tau", "gamma", "alpha", "beta", "delta", "epsilon", "threshold"};
  return lower.rfind("theta", 0) == 0 || greek.count(lower) != 0;
}

bool is_constant(const Operand& o) {
  if (o.kind == Operand::Kind::Name) return false;
  return std::all_of(o.args.begin(), o.args.end(), is_constant);
}

void literal_checks(const Rule& rule, const Condition& c, std::vector<Diagnostic>& out) {
  for (const auto& child : c.children) literal_checks(rule, child, out);
  const bool leaf = c.kind == Condition::Kind::Compare || c.kind == Condition::Kind::Within;
  if (!leaf) {
    // Repeated operands of one AND/OR never change its value.
    for (std::size_t i = 0; i < c.children.size(); ++i) {
      for (std::size_t k = 0; k < i; ++k) {
        if (c.children[i] == c.children[k]) {
          out.push_back({Severity::Warning, DiagnosticCode::DuplicateCondition, rule.id, rule.line,
                         "'" + print_condition(c.children[i]) + "' appears twice in the same clause", ""});
          break;
        }
      }
    }
    return;
  }
  const bool constant = c.kind == Condition::Kind::Compare
                            ? is_constant(c.lhs) && is_constant(c.rhs)
                            : is_constant(c.lhs) && is_constant(c.low) && is_constant(c.high);
  if (!constant) return;
  const bool value = evaluate_condition(c, {}) == Truth::True;
  out.push_back({Severity::Warning, value ? DiagnosticCode::AlwaysTrue : DiagnosticCode::AlwaysFalse, rule.id,
                 rule.line, "'" + print_condition(c) + "' compares constants and is always " +
                                (value ? "true" : "false"),
                 ""});
}

std::string suggest(const std::string& key, const LintContext& context) {
  std::string best;
  std::size_t best_distance = 3;  // suggestions within two edits only
  for (const auto* pool : {&context.known_keys, &context.external_keys, &context.symbols}) {
    for (const auto& candidate : *pool) {
      const auto d = edit_distance(key, candidate);
      if (d < best_distance || (d == best_distance && candidate < best)) {
        best = candidate;
        best_distance = d;
      }
    }
  }
  return best;
}

}  // namespace

std::vector<Diagnostic> lint(const RuleSet& rules, const LintContext& context) {
  std::vector<Diagnostic> out;
  for (std::size_t r = 0; r < rules.rules.size(); ++r) {
    const auto& rule = rules.rules[r];
    std::set<std::string> reported;
    for (const auto* o : name_operands(rule.condition)) {
      const auto lower = utf8::to_lower(o->name);
      if (!reported.insert(lower).second) continue;
      if (!o->param && context.symbols.count(lower)) continue;
      if (context.known_keys.count(lower)) continue;
      if (context.external_keys.count(lower)) {
        out.push_back({Severity::Info, DiagnosticCode::ExternalKey, rule.id, rule.line,
                       "'" + o->name + "' is not computed in-process and must be supplied with the item", ""});
        continue;
      }
      if (!o->param && looks_like_symbol(lower)) {
        out.push_back({Severity::Warning, DiagnosticCode::UnresolvableSymbol, rule.id, rule.line,
                       "threshold '" + o->name + "' is not declared in the threshold table", ""});
        continue;
      }
      const auto suggestion = suggest(lower, context);
      out.push_back({Severity::Warning, DiagnosticCode::UnknownKey, rule.id, rule.line,
                     "unknown metric key '" + o->name + "'", suggestion});
    }
    literal_checks(rule, rule.condition, out);
    for (std::size_t k = 0; k < r; ++k) {
      if (rules.rules[k].condition == rule.condition) {
        out.push_back({Severity::Warning, DiagnosticCode::DuplicateCondition, rule.id, rule.line,
                       "same condition as rule " + rules.rules[k].id, ""});
        break;
      }
    }
  }
  return out;
}

bool has_warnings(const std::vector<Diagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity != Severity::Info; });
}

std::string format_diagnostic(const Diagnostic& d) {
  std::string out = "line " + std::to_string(d.line) + ": " + std::string(severity_name(d.severity)) + " " +
                    std::string(diagnostic_code_name(d.code)) + " [" + d.rule_id + "] " + d.message;
  if (!d.suggestion.empty()) out += " (did you mean '" + d.suggestion + "'?)";
  return out;
}

}  // namespace plainloop::ruledsl
