#include "plainloop/metrics/structure.hpp"

#include <algorithm>
#include <set>

#include "plainloop/common/utf8.hpp"

namespace plainloop::metrics {

double structural_clarity(const TextUnit& output, std::size_t max_tokens) {
  const auto& sentences = output.sentences();
  if (sentences.empty()) return 1.0;
  const auto short_ones = std::count_if(sentences.begin(), sentences.end(), [&](const Sentence& s) {
    return s.tokens.size() <= max_tokens;
  });
  return static_cast<double>(short_ones) / static_cast<double>(sentences.size());
}

namespace {

std::set<std::string> numeric_tokens(const TextUnit& unit) {
  std::set<std::string> numbers;
  for (const auto& token : unit.lower_tokens()) {
    if (std::any_of(token.begin(), token.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      numbers.insert(token);
    }
  }
  return numbers;
}

}  // namespace

double numeric_integrity(const TextUnit& source, const TextUnit& output) {
  const auto expected = numeric_tokens(source);
  if (expected.empty()) return 1.0;
  const auto present = numeric_tokens(output);
  const auto kept = std::count_if(expected.begin(), expected.end(),
                                  [&](const std::string& n) { return present.count(n) != 0; });
  return static_cast<double>(kept) / static_cast<double>(expected.size());
}

bool contains_phrase(const std::vector<std::string>& tokens, const std::string& phrase) {
  const auto words = segment(phrase, Language::es).lower_tokens();
  if (words.empty() || words.size() > tokens.size()) return false;
  return std::search(tokens.begin(), tokens.end(), words.begin(), words.end()) != tokens.end();
}

double terminology_drift(const TextUnit& source, const TextUnit& output,
                         const std::vector<std::string>& protected_terms) {
  const auto source_tokens = source.lower_tokens();
  const auto output_tokens = output.lower_tokens();
  std::set<std::string> in_source;
  for (const auto& term : protected_terms) {
    if (contains_phrase(source_tokens, term)) in_source.insert(utf8::to_lower(term));
  }
  if (in_source.empty()) return 0.0;
  const auto lost = std::count_if(in_source.begin(), in_source.end(), [&](const std::string& t) {
    return !contains_phrase(output_tokens, t);
  });
  return static_cast<double>(lost) / static_cast<double>(in_source.size());
}

}  // namespace plainloop::metrics
