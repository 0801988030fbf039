#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace plainloop::utf8 {

// One decoded code point and the byte range it occupied.
struct CodePoint {
  char32_t value;
  std::size_t offset;
  std::size_t length;
};

// Malformed sequences decode to U+FFFD one byte at a time, so decoding
// never fails and every byte is covered by exactly one code point.
std::vector<CodePoint> decode(std::string_view text);
void append(std::string& out, char32_t cp);
bool is_valid(std::string_view text);

bool is_letter(char32_t cp);
bool is_digit(char32_t cp);
inline bool is_word_char(char32_t cp) { return is_letter(cp) || is_digit(cp); }
bool is_upper(char32_t cp);
bool is_space(char32_t cp);
char32_t to_lower(char32_t cp);
char32_t to_upper(char32_t cp);

std::string to_lower(std::string_view text);
// Strips the acute accent and diaeresis from Latin vowels (á→a, ü→u).
char32_t base_vowel(char32_t cp);

}  // namespace plainloop::utf8
