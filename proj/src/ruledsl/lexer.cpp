#include "lexer.hpp"

#include "plainloop/common/error.hpp"
#include "plainloop/common/kv_config.hpp"
#include "plainloop/common/utf8.hpp"

namespace plainloop::ruledsl::detail {

std::vector<Token> tokenize(std::string_view text) {
  const auto cps = utf8::decode(text);
  std::vector<Token> out;
  int line = 1;
  int column = 1;
  std::size_t i = 0;

  const auto slice = [&](std::size_t from, std::size_t to) {
    const auto begin = cps[from].offset;
    const auto end = to < cps.size() ? cps[to].offset : text.size();
    return std::string(text.substr(begin, end - begin));
  };
  const auto at = [&](std::size_t k) -> char32_t { return k < cps.size() ? cps[k].value : 0; };

  while (i < cps.size()) {
    const char32_t c = cps[i].value;
    if (c == '\n') {
      ++line;
      column = 1;
      ++i;
      continue;
    }
    if (utf8::is_space(c)) {
      ++column;
      ++i;
      continue;
    }
    Token token;
    token.line = line;
    token.column = column;
    const std::size_t start = i;

    if ((c == '/' && at(i + 1) == '/') || c == '#') {
      std::size_t j = i + (c == '#' ? 1 : 2);
      const std::size_t body = j;
      while (j < cps.size() && cps[j].value != '\n') ++j;
      token.kind = Token::Kind::Comment;
      token.text = trim(slice(body, j));
      column += static_cast<int>(j - i);
      i = j;
      out.push_back(std::move(token));
      continue;
    }
    if (utf8::is_letter(c) || c == '_') {
      while (i < cps.size() && (utf8::is_word_char(cps[i].value) || cps[i].value == '_')) ++i;
      token.kind = Token::Kind::Ident;
    } else if (utf8::is_digit(c) || (c == '.' && utf8::is_digit(at(i + 1)))) {
      while (utf8::is_digit(at(i))) ++i;
      if (at(i) == '.' && utf8::is_digit(at(i + 1))) {
        ++i;
        while (utf8::is_digit(at(i))) ++i;
      }
      token.kind = Token::Kind::Number;
      if (utf8::is_letter(at(i)) || at(i) == '_') {
        throw SyntaxError(line, column, slice(start, i + 1), "malformed number");
      }
    } else if ((c == '>' || c == '<' || c == '=') && at(i + 1) == '=') {
      i += 2;
      token.kind = Token::Kind::Punct;
    } else if (c == '>' || c == '<' || c == '(' || c == ')' || c == '[' || c == ']' || c == ',' ||
               c == '+' || c == '-' || c == ':') {
      ++i;
      token.kind = Token::Kind::Punct;
    } else {
      throw SyntaxError(line, column, slice(i, i + 1), "unexpected character");
    }
    token.text = slice(start, i);
    column += static_cast<int>(i - start);
    out.push_back(std::move(token));
  }
  Token end;
  end.kind = Token::Kind::End;
  end.line = line;
  end.column = column;
  out.push_back(end);
  return out;
}

}  // namespace plainloop::ruledsl::detail
