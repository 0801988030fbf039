#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace plainloop::metrics {

enum class Language { es, en };

std::string_view language_name(Language language);
// Throws InvalidInput for anything other than "es" / "en".
Language parse_language(std::string_view name);

struct Token {
  std::string text;   // as written
  std::string lower;  // lowercased, used for matching
  std::size_t offset = 0;  // byte offset into TextUnit::text()
  std::size_t length = 0;
};

struct Sentence {
  std::vector<Token> tokens;
};

// A segmented text. Tokens are words and numbers; punctuation is not a
// token. Sentences end at . ! ? or the ellipsis character, at blank lines,
// and around heading/list lines. Sentences never hold zero tokens.
class TextUnit {
 public:
  TextUnit() = default;

  const std::string& text() const noexcept { return text_; }
  Language language() const noexcept { return language_; }
  const std::vector<Sentence>& sentences() const noexcept { return sentences_; }
  std::size_t structural_markers() const noexcept { return structural_markers_; }

  std::size_t token_count() const noexcept;
  bool empty() const noexcept { return sentences_.empty(); }
  // All lowercased tokens in reading order.
  std::vector<std::string> lower_tokens() const;

  friend TextUnit segment(std::string_view text, Language language);

 private:
  std::string text_;
  Language language_ = Language::es;
  std::vector<Sentence> sentences_;
  std::size_t structural_markers_ = 0;
};

TextUnit segment(std::string_view text, Language language);

}  // namespace plainloop::metrics
