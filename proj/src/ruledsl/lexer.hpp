#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace plainloop::ruledsl::detail {

struct Token {
  enum class Kind { Ident, Number, Punct, Comment, End };

  Kind kind = Kind::End;
  std::string text;  // comment text is trimmed, without the marker
  int line = 1;
  int column = 1;    // 1-based, in code points
};

// `//` and `#` start comments that run to the end of the line. Throws
// SyntaxError on characters outside the language.
std::vector<Token> tokenize(std::string_view text);

}  // namespace plainloop::ruledsl::detail
