#include <doctest.h>

#include "plainloop/metrics/text_unit.hpp"
#include "test_support.hpp"

using namespace plainloop;
using namespace plainloop::metrics;

TEST_CASE("segment: empty text has no sentences") {
  const auto unit = segment("", Language::es);
  CHECK(unit.sentences().empty());
  CHECK(unit.token_count() == 0);
}

TEST_CASE("segment: two terminal periods make two sentences") {
  const auto unit = segment("Hola. Adiós.", Language::es);
  REQUIRE(unit.sentences().size() == 2);
  CHECK(unit.sentences()[0].tokens[0].text == "Hola");
  CHECK(unit.sentences()[1].tokens[0].text == "Adiós");
  CHECK(unit.sentences()[1].tokens[0].lower == "adiós");
}

TEST_CASE("segment: worked example original passage matches the frozen token list") {
  const auto unit = segment(testing::appendix_a("original"), Language::es);
  REQUIRE(unit.sentences().size() == 1);
  const auto golden = split(testing::read_text(testing::golden_path("appendix_a_original.tokens")), '\n');
  const auto tokens = unit.lower_tokens();
  CHECK(tokens.size() == 30);
  CHECK(tokens == golden);
}

TEST_CASE("segment: token offsets point back into the text") {
  const std::string text = "¿Qué pasa? ¡Nada!";
  const auto unit = segment(text, Language::es);
  REQUIRE(unit.sentences().size() == 2);
  for (const auto& sentence : unit.sentences()) {
    for (const auto& token : sentence.tokens) {
      CHECK(text.substr(token.offset, token.length) == token.text);
    }
  }
}

TEST_CASE("segment: joiners and decimal numbers stay inside one token") {
  const auto unit = segment("El e-mail cuesta 3,50 euros y dura 2.5 horas.", Language::es);
  const auto tokens = unit.lower_tokens();
  CHECK(tokens == std::vector<std::string>{"el", "e-mail", "cuesta", "3,50", "euros", "y", "dura",
                                           "2.5", "horas"});
}

TEST_CASE("segment: headings and list items are separate segments") {
  const auto unit = segment("# Licencias\n\nNecesitas:\n- una foto\n- el DNI\n1. Paga la tasa\n",
                            Language::es);
  CHECK(unit.structural_markers() == 4);
  REQUIRE(unit.sentences().size() == 5);
  CHECK(unit.sentences()[0].tokens.size() == 1);
  CHECK(unit.sentences()[3].tokens[0].text == "el");
}

TEST_CASE("segment: a single newline inside a paragraph does not split") {
  const auto unit = segment("La caza y\nla pesca.", Language::es);
  CHECK(unit.sentences().size() == 1);
  CHECK(unit.token_count() == 5);
}

TEST_CASE("segment: invariants hold on arbitrary byte strings") {
  std::uint64_t state = 0x9E3779B97F4A7C15ULL;
  const auto next = [&] {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  };
  const std::vector<std::string> pieces = {"a", "é", "Ñ", ".", "!", "?", " ", "\n", "\n\n", "- ",
                                           "# ", "1. ", "ü", "—", "…", "\xff", "\xc3", "7", ",", "'"};
  for (int round = 0; round < 500; ++round) {
    std::string text;
    const auto length = next() % 40;
    for (std::uint64_t i = 0; i < length; ++i) text += pieces[next() % pieces.size()];
    const auto a = segment(text, Language::es);
    const auto b = segment(text, Language::es);
    CHECK(a.lower_tokens() == b.lower_tokens());
    CHECK(a.sentences().size() == b.sentences().size());
    if (a.token_count() > 0) CHECK(a.token_count() >= a.sentences().size());
    for (const auto& sentence : a.sentences()) CHECK_FALSE(sentence.tokens.empty());
  }
}
