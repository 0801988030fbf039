#pragma once

#include <optional>
#include <string>
#include <vector>

namespace plainloop::ruledsl {

enum class Comparator { Gt, Lt, Ge, Le, Eq };

std::string_view comparator_symbol(Comparator c);
bool compare(double lhs, Comparator c, double rhs);

struct Operand {
  enum class Kind {
    Number,     // literal; also a threshold symbol after resolution
    Name,       // metric/KPI key or threshold symbol, optionally name(param)
    Aggregate,  // combine | min | max | mean over args
    Sum,        // args joined by '+'
  };

  Kind kind = Kind::Number;
  double number = 0.0;
  // Name: identifier as written. Aggregate: lowercase function name.
  // Number: the symbol it was resolved from, if any.
  std::string name;
  std::optional<std::string> param;
  std::vector<Operand> args;

  static Operand literal(double value);
  static Operand key(std::string name, std::optional<std::string> param = std::nullopt);

  // Lowercased name, with "(param)" when parameterized. Used for bindings.
  std::string binding_key() const;

  bool operator==(const Operand&) const = default;
};

struct Condition {
  enum class Kind { And, Or, Compare, Within };

  Kind kind = Kind::Compare;
  std::vector<Condition> children;  // And / Or
  Operand lhs;                      // Compare / Within subject
  Comparator comparator = Comparator::Gt;
  Operand rhs;   // Compare
  Operand low;   // Within
  Operand high;  // Within

  bool operator==(const Condition&) const = default;
};

struct Action {
  enum class Kind { Escalate, Record, Validate, Confirm, Accept };

  Kind kind = Kind::Escalate;
  std::string target;  // empty for Escalate

  static Action escalate() { return {}; }
  // "Activate HoTL supervision", "record comprehension_gain"
  std::string text() const;
  // "ESCALATE", "RECORD comprehension_gain"
  std::string label() const;
  static Action parse_label(const std::string& label);

  bool operator==(const Action&) const = default;
};

struct Rule {
  std::string id;
  std::optional<std::string> comment;
  Condition condition;
  Action action;
  int line = 0;  // where the rule starts; not part of equality

  bool operator==(const Rule& other) const {
    return id == other.id && comment == other.comment && condition == other.condition &&
           action == other.action;
  }
};

struct RuleSet {
  std::vector<Rule> rules;
  std::string source_text;
  std::string version;  // SHA-256 of source_text

  const Rule* find(const std::string& id) const;
};

std::string_view action_kind_name(Action::Kind kind);

// Every binding key the condition reads (lowercase, sorted, unique).
std::vector<std::string> referenced_keys(const Condition& condition);
// Every bare Name operand as written, in order of appearance.
std::vector<const Operand*> name_operands(const Condition& condition);

}  // namespace plainloop::ruledsl
