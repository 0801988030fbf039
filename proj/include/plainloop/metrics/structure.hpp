#pragma once

#include <string>
#include <vector>

#include "plainloop/metrics/text_unit.hpp"

namespace plainloop::metrics {

inline constexpr std::size_t kDefaultMaxSentenceTokens = 20;

// Fraction of sentences with at most `max_tokens` tokens; 1.0 for empty text.
double structural_clarity(const TextUnit& output, std::size_t max_tokens = kDefaultMaxSentenceTokens);

// Fraction of distinct numeric tokens of the source that the output keeps;
// 1.0 when the source has none.
double numeric_integrity(const TextUnit& source, const TextUnit& output);

// Fraction of protected terms present in the source that the output no
// longer contains; 0.0 when the source contains none of them. Terms are
// matched as lowercase token sequences.
double terminology_drift(const TextUnit& source, const TextUnit& output,
                         const std::vector<std::string>& protected_terms);

// True when `phrase` occurs in `tokens` as a contiguous lowercase sequence.
bool contains_phrase(const std::vector<std::string>& tokens, const std::string& phrase);

}  // namespace plainloop::metrics
