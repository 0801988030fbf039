#pragma once

#include <set>
#include <string>
#include <vector>

#include "plainloop/ruledsl/ast.hpp"

namespace plainloop::ruledsl {

enum class Severity { Info, Warning, Error };

enum class DiagnosticCode {
  UnknownKey,
  UnresolvableSymbol,
  ExternalKey,
  AlwaysTrue,
  AlwaysFalse,
  DuplicateCondition,
};

std::string_view severity_name(Severity s);
std::string_view diagnostic_code_name(DiagnosticCode c);

struct Diagnostic {
  Severity severity = Severity::Warning;
  DiagnosticCode code = DiagnosticCode::UnknownKey;
  std::string rule_id;
  int line = 0;
  std::string message;
  std::string suggestion;  // empty when there is none
};

struct LintContext {
  std::set<std::string> known_keys;     // lowercase, computed in-process
  std::set<std::string> external_keys;  // lowercase, supplied from outside
  std::set<std::string> symbols;        // lowercase, declared thresholds
};

std::vector<Diagnostic> lint(const RuleSet& rules, const LintContext& context);

bool has_warnings(const std::vector<Diagnostic>& diagnostics);
std::string format_diagnostic(const Diagnostic& d);

// Levenshtein distance over bytes.
std::size_t edit_distance(std::string_view a, std::string_view b);

}  // namespace plainloop::ruledsl
