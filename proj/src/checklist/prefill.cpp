#include <algorithm>

#include "plainloop/checklist/checklist.hpp"
#include "plainloop/common/format.hpp"
#include "plainloop/common/utf8.hpp"

namespace plainloop::checklist {

namespace {

bool is_acronym(const std::string& token) {
  int upper = 0;
  for (const auto& cp : utf8::decode(token)) {
    if (utf8::is_letter(cp.value)) {
      if (!utf8::is_upper(cp.value)) return false;
      ++upper;
    }
  }
  return upper >= 2;
}

bool shouting(const metrics::Sentence& sentence) {
  if (sentence.tokens.size() < 2) return false;
  return std::all_of(sentence.tokens.begin(), sentence.tokens.end(), [](const metrics::Token& t) {
    const auto cps = utf8::decode(t.text);
    return std::none_of(cps.begin(), cps.end(), [](const utf8::CodePoint& c) {
      return utf8::is_letter(c.value) && !utf8::is_upper(c.value);
    });
  });
}

// "Reglamento General (RGPD)" or "RGPD (Reglamento General)".
bool has_expansion(const std::string& text, const metrics::Token& token) {
  std::size_t before = token.offset;
  while (before > 0 && text[before - 1] == ' ') --before;
  std::size_t after = token.offset + token.length;
  while (after < text.size() && text[after] == ' ') ++after;
  const bool wrapped = before > 0 && text[before - 1] == '(' && after < text.size() && text[after] == ')';
  if (wrapped) return before > 1;  // something precedes the parenthesis
  if (after < text.size() && text[after] == '(') {
    const auto close = text.find(')', after);
    return close != std::string::npos && trim(text.substr(after + 1, close - after - 1)).find(' ') != std::string::npos;
  }
  return false;
}

}  // namespace

std::vector<std::string> detect_acronyms(const metrics::TextUnit& text) {
  std::vector<std::string> out;
  for (const auto& sentence : text.sentences()) {
    if (shouting(sentence)) continue;
    for (const auto& token : sentence.tokens) {
      if (is_acronym(token.text) && std::find(out.begin(), out.end(), token.text) == out.end()) {
        out.push_back(token.text);
      }
    }
  }
  return out;
}

std::vector<std::string> unexplained_acronyms(const metrics::TextUnit& text, const std::set<std::string>& glossary) {
  std::set<std::string> known;
  for (const auto& g : glossary) known.insert(utf8::to_lower(g));
  std::set<std::string> explained;
  for (const auto& sentence : text.sentences()) {
    if (shouting(sentence)) continue;
    for (const auto& token : sentence.tokens) {
      if (is_acronym(token.text) && has_expansion(text.text(), token)) explained.insert(token.text);
    }
  }
  std::vector<std::string> out;
  for (const auto& a : detect_acronyms(text)) {
    if (!explained.count(a) && !known.count(utf8::to_lower(a))) out.push_back(a);
  }
  return out;
}

ChecklistResult auto_prefill(const metrics::TextUnit& output, const metrics::MetricSnapshot& snapshot,
                             const std::set<std::string>& glossary, const std::string& policy_version,
                             const PrefillOptions& options) {
  ChecklistResult r;
  r.policy_version = policy_version;

  const auto missing = unexplained_acronyms(output, glossary);
  if (missing.empty()) {
    r.set(Dimension::LexicalClarity, {Status::Satisfied, Source::Auto, "every acronym is expanded or in the glossary"});
  } else {
    std::string names;
    for (const auto& a : missing) names += (names.empty() ? "" : ", ") + a;
    r.set(Dimension::LexicalClarity, {Status::Unsatisfied, Source::Auto, "acronym without expansion: " + names});
  }

  std::size_t longest = 0;
  for (const auto& s : output.sentences()) longest = std::max(longest, s.tokens.size());
  const auto limit = std::to_string(options.max_sentence_tokens);
  if (longest <= options.max_sentence_tokens) {
    r.set(Dimension::SyntacticSimplicity,
          {Status::Satisfied, Source::Auto, "every sentence has at most " + limit + " words"});
  } else {
    r.set(Dimension::SyntacticSimplicity,
          {Status::Unsatisfied, Source::Auto,
           "longest sentence has " + std::to_string(longest) + " words (limit " + limit + ")"});
  }

  if (snapshot.structural_clarity) {
    const bool ok = *snapshot.structural_clarity >= options.structural_bar;
    r.set(Dimension::StructuralClarity,
          {ok ? Status::Satisfied : Status::Unsatisfied, Source::Auto,
           "structural clarity " + format_number(*snapshot.structural_clarity) + (ok ? " >= " : " < ") +
               format_number(options.structural_bar)});
  } else {
    r.set(Dimension::StructuralClarity, {Status::Unknown, Source::Auto, "structural clarity not computed"});
  }
  for (const auto d : {Dimension::Relevance, Dimension::MultimodalSupport, Dimension::PromptModelAdaptation}) {
    r.set(d, {Status::Unknown, Source::Auto, "human judgment required"});
  }
  return r;
}

}  // namespace plainloop::checklist
