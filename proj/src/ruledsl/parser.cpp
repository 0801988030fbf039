#include <charconv>
#include <set>

#include "lexer.hpp"
#include "plainloop/common/error.hpp"
#include "plainloop/common/hash.hpp"
#include "plainloop/common/kv_config.hpp"
#include "plainloop/common/utf8.hpp"
#include "plainloop/ruledsl/parse.hpp"

namespace plainloop::ruledsl {

namespace {

using detail::Token;

bool is_aggregate(const std::string& lower) {
  return lower == "combine" || lower == "min" || lower == "max" || lower == "mean";
}

bool is_reserved(const std::string& lower) {
  static const std::set<std::string> words = {"rule", "if", "then", "and", "or", "within"};
  return words.count(lower) != 0;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  std::vector<Rule> rules() {
    std::vector<Rule> out;
    skip_comments();
    if (peek().kind == Token::Kind::End) fail(peek(), "expected RULE");
    while (peek().kind != Token::Kind::End) {
      out.push_back(rule());
      skip_comments();
    }
    return out;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  const Token& next() {
    const auto& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }
  void skip_comments() {
    while (peek().kind == Token::Kind::Comment) next();
  }
  // Significant token, skipping comments.
  const Token& look() {
    skip_comments();
    return peek();
  }

  [[noreturn]] static void fail(const Token& t, const std::string& message) {
    const auto shown = t.kind == Token::Kind::End ? std::string("end of input") : t.text;
    throw SyntaxError(t.line, t.column, shown, message);
  }

  static bool is_keyword(const Token& t, std::string_view word) {
    return t.kind == Token::Kind::Ident && utf8::to_lower(t.text) == word;
  }
  static bool is_punct(const Token& t, std::string_view p) {
    return t.kind == Token::Kind::Punct && t.text == p;
  }

  void expect_keyword(std::string_view word, const std::string& message) {
    if (!is_keyword(look(), word)) fail(peek(), message);
    next();
  }
  void expect_punct(std::string_view p) {
    if (!is_punct(look(), p)) fail(peek(), "expected '" + std::string(p) + "'");
    next();
  }

  bool at_rule_start() {
    const auto& t = look();
    if (is_keyword(t, "rule")) return true;
    return t.kind == Token::Kind::Ident && !is_reserved(utf8::to_lower(t.text)) && is_punct(peek(1), ":");
  }

  std::string identifier(const std::string& what) {
    const auto& t = look();
    if (t.kind != Token::Kind::Ident || is_reserved(utf8::to_lower(t.text))) fail(t, "expected " + what);
    return next().text;
  }

  Rule rule() {
    Rule r;
    const auto& first = look();
    r.line = first.line;
    if (is_keyword(first, "rule")) {
      next();
      r.id = identifier("rule id");
    } else if (at_rule_start()) {
      r.id = next().text;
      next();  // ':'
    } else {
      fail(first, "expected RULE");
    }
    // A comment on the same line as the id describes the rule.
    if (peek().kind == Token::Kind::Comment && peek().line == r.line) r.comment = next().text;
    expect_keyword("if", "expected IF");
    r.condition = condition();
    expect_keyword("then", "expected THEN");
    r.action = action();
    if (look().kind != Token::Kind::End && !at_rule_start()) fail(peek(), "expected end of rule");
    return r;
  }

  Action action() {
    const auto& t = look();
    const auto word = t.kind == Token::Kind::Ident ? utf8::to_lower(t.text) : std::string();
    if (word == "activate") {
      next();
      expect_keyword("hotl", "expected 'HoTL supervision'");
      expect_keyword("supervision", "expected 'supervision'");
      return Action::escalate();
    }
    if (word == "escalate") {
      next();
      return Action::escalate();
    }
    for (const auto kind : {Action::Kind::Record, Action::Kind::Validate, Action::Kind::Confirm,
                            Action::Kind::Accept}) {
      if (word == action_kind_name(kind)) {
        next();
        return {kind, identifier("action target")};
      }
    }
    fail(t, "expected action");
  }

  Condition condition() {
    Condition first = conjunction();
    if (!is_keyword(look(), "or")) return first;
    Condition c;
    c.kind = Condition::Kind::Or;
    c.children.push_back(std::move(first));
    while (is_keyword(look(), "or")) {
      next();
      c.children.push_back(conjunction());
    }
    return c;
  }

  Condition conjunction() {
    Condition first = atom();
    if (!is_keyword(look(), "and")) return first;
    Condition c;
    c.kind = Condition::Kind::And;
    c.children.push_back(std::move(first));
    while (is_keyword(look(), "and")) {
      next();
      c.children.push_back(atom());
    }
    return c;
  }

  Condition atom() {
    if (is_punct(look(), "(")) {
      next();
      Condition inner = condition();
      expect_punct(")");
      return inner;
    }
    Condition c;
    c.lhs = operand();
    if (is_keyword(look(), "within")) {
      next();
      c.kind = Condition::Kind::Within;
      const auto open = look();
      expect_punct("[");
      c.low = operand();
      expect_punct(",");
      c.high = operand();
      expect_punct("]");
      if (c.low.kind == Operand::Kind::Number && c.high.kind == Operand::Kind::Number &&
          c.low.number > c.high.number) {
        throw Error(ErrorCode::InvalidInterval, "line " + std::to_string(open.line) +
                                                    ": empty interval [" + print_number(c.low.number) +
                                                    ", " + print_number(c.high.number) + "]");
      }
      return c;
    }
    const auto& t = look();
    static const std::pair<std::string_view, Comparator> comparators[] = {
        {">", Comparator::Gt}, {"<", Comparator::Lt}, {">=", Comparator::Ge},
        {"<=", Comparator::Le}, {"==", Comparator::Eq}};
    bool found = false;
    for (const auto& [text, cmp] : comparators) {
      if (is_punct(t, text)) {
        c.comparator = cmp;
        found = true;
      }
    }
    if (!found) fail(t, "expected comparator");
    next();
    c.kind = Condition::Kind::Compare;
    c.rhs = operand();
    return c;
  }

  Operand operand() {
    Operand first = term();
    if (!is_punct(look(), "+")) return first;
    Operand sum;
    sum.kind = Operand::Kind::Sum;
    sum.args.push_back(std::move(first));
    while (is_punct(look(), "+")) {
      next();
      sum.args.push_back(term());
    }
    return sum;
  }

  double number(const Token& t, bool negative) {
    double value = 0;
    const auto* begin = t.text.data();
    const auto [ptr, ec] = std::from_chars(begin, begin + t.text.size(), value);
    if (ec != std::errc() || ptr != begin + t.text.size()) fail(t, "malformed number");
    return negative ? -value : value;
  }

  Operand term() {
    const auto& t = look();
    if (t.kind == Token::Kind::Number) {
      next();
      return Operand::literal(number(t, false));
    }
    if (is_punct(t, "-")) {
      next();
      const auto& n = look();
      if (n.kind != Token::Kind::Number) fail(n, "expected number after '-'");
      next();
      return Operand::literal(number(n, true));
    }
    if (t.kind != Token::Kind::Ident || is_reserved(utf8::to_lower(t.text))) fail(t, "expected operand");
    const auto name = next().text;
    if (!is_punct(look(), "(")) return Operand::key(name);
    next();
    const auto lower = utf8::to_lower(name);
    if (is_aggregate(lower)) {
      Operand agg;
      agg.kind = Operand::Kind::Aggregate;
      agg.name = lower;
      agg.args.push_back(operand());
      while (is_punct(look(), ",")) {
        next();
        agg.args.push_back(operand());
      }
      expect_punct(")");
      return agg;
    }
    auto param = identifier("key parameter");
    expect_punct(")");
    return Operand::key(name, std::move(param));
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

std::string child_text(const Condition& child, Condition::Kind parent) {
  const bool wrap = child.kind == Condition::Kind::Or ||
                    (child.kind == Condition::Kind::And && parent == Condition::Kind::And);
  const auto text = print_condition(child);
  return wrap ? "(" + text + ")" : text;
}

}  // namespace

RuleSet parse_rules(std::string_view dsl_text) {
  Parser parser(detail::tokenize(dsl_text));
  RuleSet set;
  set.rules = parser.rules();
  std::set<std::string> seen;
  for (const auto& rule : set.rules) {
    if (!seen.insert(rule.id).second) {
      throw Error(ErrorCode::DuplicateRuleId,
                  "line " + std::to_string(rule.line) + ": duplicate rule id '" + rule.id + "'");
    }
  }
  set.source_text = std::string(dsl_text);
  set.version = sha256_hex(dsl_text);
  return set;
}

RuleSet load_rules(const std::string& path) { return parse_rules(read_file(path)); }

std::string print_number(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, ec == std::errc() ? ptr : buffer);
}

std::string print_operand(const Operand& o) {
  switch (o.kind) {
    case Operand::Kind::Number:
      return o.name.empty() ? print_number(o.number) : o.name;
    case Operand::Kind::Name:
      return o.param ? o.name + "(" + *o.param + ")" : o.name;
    case Operand::Kind::Aggregate: {
      std::string out = o.name + "(";
      for (std::size_t i = 0; i < o.args.size(); ++i) out += (i ? ", " : "") + print_operand(o.args[i]);
      return out + ")";
    }
    case Operand::Kind::Sum: {
      std::string out;
      for (std::size_t i = 0; i < o.args.size(); ++i) out += (i ? " + " : "") + print_operand(o.args[i]);
      return out;
    }
  }
  return {};
}

std::string print_condition(const Condition& c) {
  switch (c.kind) {
    case Condition::Kind::And:
    case Condition::Kind::Or: {
      const auto joiner = c.kind == Condition::Kind::And ? "  AND  " : "  OR  ";
      std::string out;
      for (std::size_t i = 0; i < c.children.size(); ++i) {
        if (i) out += joiner;
        out += child_text(c.children[i], c.kind);
      }
      return out;
    }
    case Condition::Kind::Compare:
      return print_operand(c.lhs) + " " + std::string(comparator_symbol(c.comparator)) + " " +
             print_operand(c.rhs);
    case Condition::Kind::Within:
      return print_operand(c.lhs) + " within [" + print_operand(c.low) + ", " + print_operand(c.high) + "]";
  }
  return {};
}

std::string print_rule(const Rule& rule) {
  std::string out = "RULE " + rule.id;
  if (rule.comment) out += "  // " + *rule.comment;
  out += "\nIF  " + print_condition(rule.condition) + "\nTHEN " + rule.action.text() + "\n";
  return out;
}

std::string print_rules(const RuleSet& rules) {
  std::string out;
  for (std::size_t i = 0; i < rules.rules.size(); ++i) {
    if (i) out += "\n";
    out += print_rule(rules.rules[i]);
  }
  return out;
}

}  // namespace plainloop::ruledsl
