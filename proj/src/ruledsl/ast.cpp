#include "plainloop/ruledsl/ast.hpp"

#include <algorithm>
#include <set>

#include "plainloop/common/error.hpp"
#include "plainloop/common/utf8.hpp"

namespace plainloop::ruledsl {

std::string_view comparator_symbol(Comparator c) {
  switch (c) {
    case Comparator::Gt: return ">";
    case Comparator::Lt: return "<";
    case Comparator::Ge: return ">=";
    case Comparator::Le: return "<=";
    case Comparator::Eq: return "==";
  }
  return "?";
}

bool compare(double lhs, Comparator c, double rhs) {
  switch (c) {
    case Comparator::Gt: return lhs > rhs;
    case Comparator::Lt: return lhs < rhs;
    case Comparator::Ge: return lhs >= rhs;
    case Comparator::Le: return lhs <= rhs;
    case Comparator::Eq: return lhs == rhs;
  }
  return false;
}

Operand Operand::literal(double value) {
  Operand o;
  o.kind = Kind::Number;
  o.number = value;
  return o;
}

Operand Operand::key(std::string name, std::optional<std::string> param) {
  Operand o;
  o.kind = Kind::Name;
  o.name = std::move(name);
  o.param = std::move(param);
  return o;
}

std::string Operand::binding_key() const {
  auto key = utf8::to_lower(name);
  if (param) key += "(" + utf8::to_lower(*param) + ")";
  return key;
}

std::string_view action_kind_name(Action::Kind kind) {
  switch (kind) {
    case Action::Kind::Escalate: return "escalate";
    case Action::Kind::Record: return "record";
    case Action::Kind::Validate: return "validate";
    case Action::Kind::Confirm: return "confirm";
    case Action::Kind::Accept: return "accept";
  }
  return "?";
}

std::string Action::text() const {
  if (kind == Kind::Escalate) return "Activate HoTL supervision";
  return std::string(action_kind_name(kind)) + " " + target;
}

std::string Action::label() const {
  if (kind == Kind::Escalate) return "ESCALATE";
  std::string verb(action_kind_name(kind));
  std::transform(verb.begin(), verb.end(), verb.begin(), [](unsigned char c) { return std::toupper(c); });
  return verb + " " + target;
}

Action Action::parse_label(const std::string& label) {
  if (label == "ESCALATE") return escalate();
  const auto space = label.find(' ');
  const auto verb = utf8::to_lower(label.substr(0, space));
  const auto target = space == std::string::npos ? std::string() : label.substr(space + 1);
  for (const auto kind : {Kind::Record, Kind::Validate, Kind::Confirm, Kind::Accept}) {
    if (verb == action_kind_name(kind) && !target.empty()) return {kind, target};
  }
  throw Error(ErrorCode::InvalidInput, "unknown action label '" + label + "'");
}

const Rule* RuleSet::find(const std::string& id) const {
  for (const auto& rule : rules) {
    if (rule.id == id) return &rule;
  }
  return nullptr;
}

namespace {

void collect_operand(const Operand& o, std::vector<const Operand*>& out) {
  if (o.kind == Operand::Kind::Name) out.push_back(&o);
  for (const auto& arg : o.args) collect_operand(arg, out);
}

void collect(const Condition& c, std::vector<const Operand*>& out) {
  switch (c.kind) {
    case Condition::Kind::And:
    case Condition::Kind::Or:
      for (const auto& child : c.children) collect(child, out);
      break;
    case Condition::Kind::Compare:
      collect_operand(c.lhs, out);
      collect_operand(c.rhs, out);
      break;
    case Condition::Kind::Within:
      collect_operand(c.lhs, out);
      collect_operand(c.low, out);
      collect_operand(c.high, out);
      break;
  }
}

}  // namespace

std::vector<const Operand*> name_operands(const Condition& condition) {
  std::vector<const Operand*> out;
  collect(condition, out);
  return out;
}

std::vector<std::string> referenced_keys(const Condition& condition) {
  std::set<std::string> keys;
  for (const auto* o : name_operands(condition)) keys.insert(o->binding_key());
  return {keys.begin(), keys.end()};
}

}  // namespace plainloop::ruledsl
