#include "plainloop/common/error.hpp"
#include "plainloop/common/utf8.hpp"
#include "plainloop/ruledsl/evaluate.hpp"
#include "plainloop/ruledsl/parse.hpp"

namespace plainloop::ruledsl {

namespace {

struct Resolver {
  const ThresholdTable& table;
  const std::string& profile;
  const std::string& domain;
  const std::string* rule_id = nullptr;
  std::vector<Resolution>& provenance;

  void operand(Operand& o) {
    for (auto& arg : o.args) operand(arg);
    if (o.kind != Operand::Kind::Name) return;
    if (o.param) {
      const auto lower = utf8::to_lower(*o.param);
      if (lower == "profile") o.param = profile;
      if (lower == "domain") o.param = domain;
      return;
    }
    if (!table.declares(o.name)) return;
    const auto entry = table.lookup(o.name, profile, domain);
    if (!entry) {
      throw Error(ErrorCode::UnresolvedSymbol, "no value for '" + o.name + "' (profile " + profile +
                                                   ", domain " + domain + ")");
    }
    provenance.push_back({*rule_id, o.name, entry->value, entry->profile, entry->domain, entry->note});
    const auto symbol = o.name;
    o = Operand::literal(entry->value);
    o.name = symbol;
  }

  void condition(Condition& c) {
    for (auto& child : c.children) condition(child);
    if (c.kind == Condition::Kind::Compare) {
      operand(c.lhs);
      operand(c.rhs);
    } else if (c.kind == Condition::Kind::Within) {
      operand(c.lhs);
      operand(c.low);
      operand(c.high);
      if (c.low.kind == Operand::Kind::Number && c.high.kind == Operand::Kind::Number &&
          c.low.number > c.high.number) {
        throw Error(ErrorCode::InvalidInterval, "rule " + *rule_id + ": empty interval [" +
                                                    print_number(c.low.number) + ", " +
                                                    print_number(c.high.number) + "]");
      }
    }
  }
};

ResolvedRuleSet resolve_rules(std::vector<Rule> rules, std::string version, const ThresholdTable& table,
                              const std::string& profile, const std::string& domain) {
  ResolvedRuleSet out;
  out.version = std::move(version);
  out.profile = profile;
  out.domain = domain;
  Resolver resolver{table, profile, domain, nullptr, out.provenance};
  for (auto& rule : rules) {
    resolver.rule_id = &rule.id;
    resolver.condition(rule.condition);
  }
  out.rules = std::move(rules);
  return out;
}

}  // namespace

ResolvedRuleSet resolve(const RuleSet& rules, const ThresholdTable& table, const std::string& profile,
                        const std::string& domain) {
  return resolve_rules(rules.rules, rules.version, table, profile, domain);
}

ResolvedRuleSet resolve(const ResolvedRuleSet& rules, const ThresholdTable& table) {
  auto again = resolve_rules(rules.rules, rules.version, table, rules.profile, rules.domain);
  again.provenance.insert(again.provenance.begin(), rules.provenance.begin(), rules.provenance.end());
  return again;
}

}  // namespace plainloop::ruledsl
