#include "plainloop/metrics/readability.hpp"

#include <algorithm>

#include "plainloop/common/error.hpp"
#include "plainloop/common/utf8.hpp"

namespace plainloop::metrics {

namespace {

enum class VowelKind { None, Weak, Strong };

VowelKind spanish_vowel(char32_t cp) {
  switch (cp) {
    case 'a': case 'e': case 'o':
    case 0xE1: case 0xE9: case 0xF3:  // á é ó
    case 0xED: case 0xFA:             // í ú break diphthongs
      return VowelKind::Strong;
    case 'i': case 'u': case 0xFC:    // ü
      return VowelKind::Weak;
    default:
      return VowelKind::None;
  }
}

int spanish_syllables(const std::vector<utf8::CodePoint>& cps) {
  int count = 0;
  VowelKind prev = VowelKind::None;
  for (std::size_t i = 0; i < cps.size(); ++i) {
    const char32_t cp = cps[i].value;
    VowelKind kind = spanish_vowel(cp);
    if (cp == 'y' && i + 1 == cps.size() && prev != VowelKind::None) kind = VowelKind::Weak;
    if (kind == VowelKind::None) {
      prev = VowelKind::None;
      continue;
    }
    if (prev == VowelKind::None || (kind == VowelKind::Strong && prev == VowelKind::Strong)) {
      ++count;
    }
    prev = kind;
  }
  return count;
}

bool english_vowel(char32_t cp) {
  const char32_t base = utf8::base_vowel(cp);
  return base == 'a' || base == 'e' || base == 'i' || base == 'o' || base == 'u' || base == 'y';
}

int english_syllables(const std::vector<utf8::CodePoint>& cps) {
  int count = 0;
  bool prev = false;
  for (const auto& cp : cps) {
    const bool vowel = english_vowel(cp.value);
    if (vowel && !prev) ++count;
    prev = vowel;
  }
  const std::size_t n = cps.size();
  if (count > 1 && n >= 2 && cps[n - 1].value == 'e' && !english_vowel(cps[n - 2].value)) {
    const bool consonant_le = cps[n - 2].value == 'l' && n >= 3 && !english_vowel(cps[n - 3].value);
    if (!consonant_le) --count;
  }
  return count;
}

}  // namespace

int count_syllables(std::string_view lower_word, Language language) {
  const auto cps = utf8::decode(lower_word);
  const int count = language == Language::es ? spanish_syllables(cps) : english_syllables(cps);
  return std::max(count, 1);
}

ReadabilityCounts readability_counts(const TextUnit& unit) {
  ReadabilityCounts counts;
  counts.sentences = static_cast<int>(unit.sentences().size());
  for (const auto& sentence : unit.sentences()) {
    for (const auto& token : sentence.tokens) {
      ++counts.words;
      counts.syllables += count_syllables(token.lower, unit.language());
    }
  }
  return counts;
}

double readability(const TextUnit& unit) {
  const auto counts = readability_counts(unit);
  if (counts.sentences == 0) throw Error(ErrorCode::EmptyText, "readability of empty text");
  const double words = counts.words;
  const double words_per_sentence = words / counts.sentences;
  const double syllables_per_word = counts.syllables / words;
  double score = 0.0;
  if (unit.language() == Language::es) {
    score = 206.84 - 0.60 * (100.0 * syllables_per_word) - 1.02 * words_per_sentence;
  } else {
    score = 206.835 - 1.015 * words_per_sentence - 84.6 * syllables_per_word;
  }
  return std::clamp(score, 0.0, 100.0);
}

}  // namespace plainloop::metrics
