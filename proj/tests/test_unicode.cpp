#include <catch2/catch_amalgamated.hpp>

#include "entex/unicode.hpp"

using namespace entex;

TEST_CASE("utf8 decode round-trips arbitrary bytes") {
  std::string samples[] = {
      "", "plain ascii", "Éternel Gbagbo", "Côte d'Ivoire", "日本語テキスト",
      std::string("\xff\xfe broken \xc3", 12),  // invalid sequences pass through
      "a\xc3\x29z",                              // truncated 2-byte start
  };
  for (const auto& s : samples) {
    uni::Decoded d = uni::decode(s);
    std::string back;
    for (char32_t c : d.cps) uni::encode_to(c, back);
    CHECK(back == s);
    REQUIRE(d.byte_of.size() == d.cps.size() + 1);
    CHECK(d.byte_of.back() == s.size());
  }
}

TEST_CASE("case classification covers French letters") {
  CHECK(uni::is_upper(U'É'));
  CHECK(uni::is_lower(U'é'));
  CHECK(uni::is_upper(U'Œ'));
  CHECK(uni::is_lower(U'œ'));
  CHECK(uni::is_lower(U'ß'));
  CHECK(uni::to_lower(U'É') == U'é');
  CHECK(uni::to_upper(U'ç') == U'Ç');
  CHECK(uni::to_upper(U'ÿ') == U'Ÿ');
  CHECK(uni::to_lower(U'Ÿ') == U'ÿ');
  CHECK_FALSE(uni::is_letter(U'×'));
  CHECK_FALSE(uni::is_letter(U'÷'));
  CHECK(uni::is_letter(U'ĸ'));
}

TEST_CASE("latin extended-A parity blocks map both ways") {
  for (char32_t c = 0x100; c <= 0x17E; ++c) {
    if (c == 0x130 || c == 0x131 || c == 0x138 || c == 0x149 || c == 0x178) continue;
    if (uni::is_upper(c)) {
      CHECK(uni::to_upper(uni::to_lower(c)) == c);
    } else {
      CHECK(uni::to_lower(uni::to_upper(c)) == c);
    }
  }
}

TEST_CASE("string folds") {
  CHECK(uni::lower_copy("GBAGBO") == "gbagbo");
  CHECK(uni::lower_copy("ÉTERNEL") == "éternel");
  CHECK(uni::title_copy("GBAGBO") == "Gbagbo");
  CHECK(uni::title_copy("N'DJAMENA") == "N'djamena");
  CHECK(uni::title_copy("usa") == "Usa");
}

TEST_CASE("whitespace set") {
  CHECK(uni::is_space(U' '));
  CHECK(uni::is_space(U'\t'));
  CHECK(uni::is_space(U'\n'));
  CHECK(uni::is_space(0xA0));
  CHECK(uni::is_space(0x202F));
  CHECK_FALSE(uni::is_space(U'x'));
}
