#pragma once

#include <string_view>

#include "plainloop/metrics/text_unit.hpp"

namespace plainloop::metrics {

// Rule-based syllable counters. Every word counts at least one syllable.
//
// Spanish: each maximal run of vowels (a e i o u, accented forms, ü, and a
// word-final y after a vowel) is one nucleus, split once more at every
// adjacent pair of strong vowels (a e o, or an accented i/u). So "tienen"
// is 2, "leer" is 2, "papeleos" is 4, "requieren" is 3.
//
// English: runs of a e i o u y, minus a silent final "e" (not after a
// consonant + "l"), minimum one.
int count_syllables(std::string_view lower_word, Language language);

struct ReadabilityCounts {
  int words = 0;
  int sentences = 0;
  int syllables = 0;
};

ReadabilityCounts readability_counts(const TextUnit& unit);

// Spanish uses Fernández-Huerta in the words-per-sentence form:
//   206.84 - 0.60 * (syllables per 100 words) - 1.02 * (words per sentence)
// English uses Flesch Reading Ease:
//   206.835 - 1.015 * (words per sentence) - 84.6 * (syllables per word)
// The result is clamped to [0, 100]. Throws EmptyText for zero sentences.
double readability(const TextUnit& unit);

}  // namespace plainloop::metrics
