#pragma once

#include <string>
#include <string_view>

#include "plainloop/ruledsl/ast.hpp"

namespace plainloop::ruledsl {

// Throws SyntaxError (line, column, offending token), DuplicateRuleId, or
// InvalidInterval for a literal "within [lo, hi]" with lo > hi.
RuleSet parse_rules(std::string_view dsl_text);
RuleSet load_rules(const std::string& path);

// Canonical text. parse_rules(print_rules(r)).rules == r.rules.
std::string print_rules(const RuleSet& rules);
std::string print_rule(const Rule& rule);
std::string print_condition(const Condition& condition);
std::string print_operand(const Operand& operand);
// Shortest text that reads back as the same double.
std::string print_number(double value);

}  // namespace plainloop::ruledsl
