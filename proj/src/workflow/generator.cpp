#include "plainloop/workflow/generator.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

#include "plainloop/common/error.hpp"
#include "plainloop/common/kv_config.hpp"
#include "plainloop/common/utf8.hpp"

namespace plainloop::workflow {

using metrics::Language;
using metrics::Token;

namespace {

std::vector<std::string> term_tokens(const std::string& phrase, Language language) {
  return metrics::segment(phrase, language).lower_tokens();
}

std::string capitalize(const std::string& text) {
  const auto cps = utf8::decode(text);
  if (cps.empty()) return text;
  std::string out;
  utf8::append(out, utf8::to_upper(cps.front().value));
  out += text.substr(cps.front().length);
  return out;
}

bool starts_upper(std::string_view text) {
  const auto cps = utf8::decode(text.substr(0, std::min<std::size_t>(text.size(), 4)));
  return !cps.empty() && utf8::is_upper(cps.front().value);
}

// Conjunctions that can start a new sentence. The additive ones are
// dropped when splitting.
bool is_split_point(const std::string& lower, bool& drop) {
  static const std::set<std::string> additive = {"y", "e", "and"};
  static const std::set<std::string> other = {"pero", "porque", "aunque", "but", "because", "although"};
  drop = additive.count(lower) != 0;
  return drop || other.count(lower) != 0;
}

}  // namespace

Glossary Glossary::parse_tsv(std::string_view text) {
  Glossary glossary;
  int line_no = 0;
  for (const auto& raw : split(text, '\n')) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto columns = split(line, '\t');
    if (columns.size() < 2 || trim(columns[0]).empty() || trim(columns[1]).empty()) {
      throw Error(ErrorCode::InvalidConfig,
                  "glossary line " + std::to_string(line_no) + ": expected term<TAB>substitute[<TAB>note]");
    }
    glossary.add({trim(columns[0]), trim(columns[1]), columns.size() > 2 ? trim(columns[2]) : ""});
  }
  return glossary;
}

Glossary Glossary::load_tsv(const std::string& path) { return parse_tsv(read_file(path)); }

std::string Glossary::to_tsv() const {
  std::string out = "# term\tsubstitute\tnote\n";
  for (const auto& e : entries_) out += e.term + "\t" + e.substitute + "\t" + e.note + "\n";
  return out;
}

void Glossary::add(GlossaryEntry entry) {
  const auto key = utf8::to_lower(entry.term);
  for (auto& existing : entries_) {
    if (utf8::to_lower(existing.term) == key) {
      existing = std::move(entry);
      return;
    }
  }
  entries_.push_back(std::move(entry));
}

const GlossaryEntry* Glossary::find(const std::string& term) const {
  const auto key = utf8::to_lower(term);
  for (const auto& e : entries_) {
    if (utf8::to_lower(e.term) == key) return &e;
  }
  return nullptr;
}

std::set<std::string> Glossary::terms() const {
  std::set<std::string> out;
  for (const auto& e : entries_) out.insert(utf8::to_lower(e.term));
  return out;
}

std::string apply_glossary(const std::string& text, const Glossary& glossary, Language language) {
  if (glossary.empty()) return text;
  std::vector<std::pair<std::vector<std::string>, const GlossaryEntry*>> terms;
  for (const auto& e : glossary.entries()) {
    auto tokens = term_tokens(e.term, language);
    if (!tokens.empty()) terms.emplace_back(std::move(tokens), &e);
  }
  // Longest terms first so "trámite administrativo" beats "trámite".
  std::stable_sort(terms.begin(), terms.end(),
                   [](const auto& a, const auto& b) { return a.first.size() > b.first.size(); });

  const auto unit = metrics::segment(text, language);
  std::vector<Token> tokens;
  for (const auto& sentence : unit.sentences()) {
    tokens.insert(tokens.end(), sentence.tokens.begin(), sentence.tokens.end());
  }
  std::string out;
  std::size_t copied = 0;
  std::size_t i = 0;
  while (i < tokens.size()) {
    const GlossaryEntry* hit = nullptr;
    std::size_t length = 0;
    for (const auto& [words, entry] : terms) {
      if (i + words.size() > tokens.size()) continue;
      bool match = true;
      for (std::size_t k = 0; k < words.size() && match; ++k) match = tokens[i + k].lower == words[k];
      if (match) {
        hit = entry;
        length = words.size();
        break;
      }
    }
    if (!hit) {
      ++i;
      continue;
    }
    const auto begin = tokens[i].offset;
    const auto end = tokens[i + length - 1].offset + tokens[i + length - 1].length;
    out += text.substr(copied, begin - copied);
    out += starts_upper(tokens[i].text) ? capitalize(hit->substitute) : hit->substitute;
    copied = end;
    i += length;
  }
  out += text.substr(copied);
  return out;
}

std::string split_long_sentences(const std::string& text, std::size_t max_tokens, Language language) {
  std::string current = text;
  // Each pass splits at most one sentence; a split always shortens it.
  for (int pass = 0; pass < 1000; ++pass) {
    const auto unit = metrics::segment(current, language);
    bool changed = false;
    for (const auto& sentence : unit.sentences()) {
      const auto& t = sentence.tokens;
      if (t.size() <= max_tokens) continue;
      std::size_t best = 0;
      bool best_drop = false;
      const auto middle = static_cast<long>(t.size() / 2);
      for (std::size_t k = 3; k + 3 < t.size(); ++k) {
        bool drop = false;
        if (!is_split_point(t[k].lower, drop)) continue;
        if (best == 0 || std::labs(static_cast<long>(k) - middle) < std::labs(static_cast<long>(best) - middle)) {
          best = k;
          best_drop = drop;
        }
      }
      if (best == 0) continue;
      const auto cut = t[best - 1].offset + t[best - 1].length;
      const auto& next = best_drop ? t[best + 1] : t[best];
      std::string rest = current.substr(next.offset);
      current = current.substr(0, cut) + ". " + capitalize(rest);
      changed = true;
      break;
    }
    if (!changed) break;
  }
  return current;
}

std::string StubGenerator::generate(const GenerationRequest& request, const Glossary& glossary) const {
  if (trim(request.source).empty()) throw Error(ErrorCode::EmptySource, "source text is empty");
  return split_long_sentences(apply_glossary(request.source, glossary, language_), max_tokens_, language_);
}

}  // namespace plainloop::workflow
