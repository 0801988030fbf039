#include "plainloop/metrics/text_unit.hpp"

#include "plainloop/common/error.hpp"
#include "plainloop/common/utf8.hpp"

namespace plainloop::metrics {

std::string_view language_name(Language language) {
  return language == Language::es ? "es" : "en";
}

Language parse_language(std::string_view name) {
  if (name == "es") return Language::es;
  if (name == "en") return Language::en;
  throw Error(ErrorCode::InvalidInput, "unsupported language '" + std::string(name) + "'");
}

std::size_t TextUnit::token_count() const noexcept {
  std::size_t count = 0;
  for (const auto& sentence : sentences_) count += sentence.tokens.size();
  return count;
}

std::vector<std::string> TextUnit::lower_tokens() const {
  std::vector<std::string> tokens;
  tokens.reserve(token_count());
  for (const auto& sentence : sentences_) {
    for (const auto& token : sentence.tokens) tokens.push_back(token.lower);
  }
  return tokens;
}

namespace {

using utf8::CodePoint;

bool is_terminal(char32_t cp) { return cp == '.' || cp == '!' || cp == '?' || cp == 0x2026; }
bool is_joiner(char32_t cp) { return cp == '-' || cp == '\'' || cp == 0x2019; }
bool is_bullet(char32_t cp) {
  return cp == '-' || cp == '*' || cp == '+' || cp == 0x2022 || cp == 0xB7;
}

class Segmenter {
 public:
  Segmenter(std::string_view text, std::vector<Sentence>& out) : text_(text), out_(out) {
    cps_ = utf8::decode(text);
  }

  std::size_t run() {
    std::size_t markers = 0;
    std::size_t i = 0;
    const std::size_t n = cps_.size();
    while (i < n) {
      std::size_t end = i;
      while (end < n && cps_[end].value != '\n') ++end;
      std::size_t first = i;
      while (first < end && utf8::is_space(cps_[first].value)) ++first;
      if (first == end) {
        flush();  // blank line closes the paragraph
      } else if (const auto marker = marker_length(first, end); marker > 0) {
        flush();
        ++markers;
        scan(first + marker, end);
        flush();
      } else {
        scan(first, end);
      }
      i = end + 1;
    }
    flush();
    return markers;
  }

 private:
  // Length in code points of a heading/list marker plus its trailing space.
  std::size_t marker_length(std::size_t at, std::size_t end) const {
    const auto cp = [&](std::size_t k) { return k < end ? cps_[k].value : char32_t{0}; };
    if (cp(at) == '#') {
      std::size_t k = at;
      while (cp(k) == '#') ++k;
      return cp(k) == ' ' ? k - at + 1 : 0;
    }
    if (is_bullet(cp(at)) && cp(at + 1) == ' ') return 2;
    std::size_t k = at;
    while (utf8::is_digit(cp(k)) && k - at < 3) ++k;
    if (k > at && (cp(k) == '.' || cp(k) == ')') && cp(k + 1) == ' ') return k - at + 2;
    return 0;
  }

  void scan(std::size_t begin, std::size_t end) {
    std::size_t k = begin;
    while (k < end) {
      const char32_t cp = cps_[k].value;
      if (utf8::is_word_char(cp)) {
        k = take_token(k, end);
        continue;
      }
      if (is_terminal(cp)) flush();
      ++k;
    }
  }

  std::size_t take_token(std::size_t start, std::size_t end) {
    std::size_t k = start + 1;
    while (k < end) {
      const char32_t cp = cps_[k].value;
      if (utf8::is_word_char(cp)) {
        ++k;
        continue;
      }
      const bool has_next = k + 1 < end;
      const char32_t prev = cps_[k - 1].value;
      const char32_t next = has_next ? cps_[k + 1].value : 0;
      if (has_next && is_joiner(cp) && utf8::is_letter(prev) && utf8::is_letter(next)) {
        k += 2;
        continue;
      }
      if (has_next && (cp == '.' || cp == ',') && utf8::is_digit(prev) && utf8::is_digit(next)) {
        k += 2;
        continue;
      }
      break;
    }
    const std::size_t offset = cps_[start].offset;
    const std::size_t stop = cps_[k - 1].offset + cps_[k - 1].length;
    Token token;
    token.offset = offset;
    token.length = stop - offset;
    token.text = std::string(text_.substr(offset, token.length));
    token.lower = utf8::to_lower(token.text);
    current_.tokens.push_back(std::move(token));
    return k;
  }

  void flush() {
    if (!current_.tokens.empty()) out_.push_back(std::move(current_));
    current_ = Sentence{};
  }

  std::string_view text_;
  std::vector<Sentence>& out_;
  std::vector<CodePoint> cps_;
  Sentence current_;
};

}  // namespace

TextUnit segment(std::string_view text, Language language) {
  TextUnit unit;
  unit.text_ = std::string(text);
  unit.language_ = language;
  Segmenter segmenter(unit.text_, unit.sentences_);
  unit.structural_markers_ = segmenter.run();
  return unit;
}

}  // namespace plainloop::metrics
