#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "fixtures.hpp"

using namespace majorsys;
using namespace majorsys::testing;

namespace {

using T = UniversalTag;
using Strings = std::vector<std::string>;

DigitString digits(std::string_view s) { return DigitString::from(s); }

}  // namespace

TEST(Decode, ConcatenatesCanonicalDigits) {
  const auto& lex = toy().lexicon;
  EXPECT_EQ(decode(Strings{"tent"}, lex).str(), "121");
  EXPECT_EQ(decode(Strings{"The", "tent", "."}, lex).str(), "1121");
  EXPECT_EQ(decode(Strings{"a", "hay"}, lex).str(), "");
  EXPECT_EQ(decode_text("Tent, see. Shoe!", lex).digits.str(), "12106");
}

TEST(Decode, UnknownWordsThrow) {
  try {
    decode(Strings{"tent", "zebra"}, toy().lexicon);
    FAIL() << "expected UnknownWordError";
  } catch (const UnknownWordError& e) {
    EXPECT_EQ(e.word(), "zebra");
    EXPECT_EQ(e.code(), ExitCode::kData);
  }
}

TEST(Decode, WarnsAboutDivergentAlternates) {
  const auto r = world("READ  R IY1 D\nREAD(1)  R EH1 D Z\nSEE  S IY1\n", "read/verb see/verb\n");
  const auto result = decode_text("read see", r.lexicon);
  EXPECT_EQ(result.digits.str(), "410");
  ASSERT_EQ(result.warnings.size(), 1u);
  EXPECT_NE(result.warnings[0].find("410"), std::string::npos);
}

TEST(RoundTrip, AcceptsFaithfulEncoding) {
  const Encoding enc{digits("1210"), {{{{"tent", digits("121"), T::kNoun}, {"see", digits("0"), T::kVerb}}, true}}};
  const auto report = check_roundtrip(enc, toy().lexicon);
  EXPECT_TRUE(report.ok);
  EXPECT_FALSE(report.word_position);
}

TEST(RoundTrip, ReportsFirstBadWord) {
  const auto& lex = toy().lexicon;
  const Encoding wrong_span{digits("1210"), {{{{"tent", digits("121"), {}}, {"see", digits("1"), {}}}, false}}};
  auto report = check_roundtrip(wrong_span, lex);
  EXPECT_FALSE(report.ok);
  EXPECT_EQ(report.word_position, 1u);

  const Encoding unknown{digits("1"), {{{{"zebra", digits("1"), {}}}, false}}};
  report = check_roundtrip(unknown, lex);
  EXPECT_FALSE(report.ok);
  EXPECT_EQ(report.word_position, 0u);

  const Encoding short_output{digits("12104"), {{{{"tent", digits("121"), {}}, {"see", digits("0"), {}}}, true}}};
  report = check_roundtrip(short_output, lex);
  EXPECT_FALSE(report.ok);
  EXPECT_NE(report.message.find("expected 12104"), std::string::npos);

  const Encoding diverging{digits("1215"), {{{{"tent", digits("121"), {}}, {"see", digits("0"), {}}}, true}}};
  report = check_roundtrip(diverging, lex);
  EXPECT_FALSE(report.ok);
  EXPECT_EQ(report.word_position, 1u);
}

TEST(MetricsTest, CountsAndScores) {
  const auto& r = toy();
  const Encoding enc{digits("12104"),
                     {{{{"tent", digits("121"), {}}, {"see", digits("0"), {}}}, true},
                      {{{"ray", digits("4"), {}}}, true}}};
  const auto m = compute_metrics(enc, r.lexicon, r.lm);
  EXPECT_EQ(m.word_count, 3u);
  EXPECT_EQ(m.sentence_count, 2u);
  EXPECT_DOUBLE_EQ(m.digits_per_word, 5.0 / 3.0);
  const double freq = (3.0 + 5.0 + 1.0) / 3.0;
  EXPECT_DOUBLE_EQ(m.mean_word_frequency, freq);
  const auto id = [&](const char* w) { return r.lm.vocab.id(w); };
  const std::vector<TokenId> bos = {kBos, kBos};
  const std::vector<TokenId> after_tent = {kBos, id("tent")};
  const double expected = std::log(r.lm.score(bos, id("tent"))) + std::log(r.lm.score(after_tent, id("see"))) +
                          std::log(r.lm.score(bos, id("ray")));
  EXPECT_NEAR(m.model_score, expected, 1e-12);
}

TEST(MetricsTest, EmptyEncoding) {
  const auto m = compute_metrics(Encoding{}, toy().lexicon, toy().lm);
  EXPECT_EQ(m.word_count, 0u);
  EXPECT_EQ(m.digits_per_word, 0.0);
}

TEST(RenderText, CapitalisesAndPunctuates) {
  const Encoding enc{digits("12104"),
                     {{{{"tent", digits("121"), {}}, {"see", digits("0"), {}}}, true},
                      {{{"ray", digits("4"), {}}}, false}}};
  EXPECT_EQ(enc.text(), "Tent see. Ray");
}

TEST(Records, RoundTrip) {
  const Encoding enc{digits("12104"),
                     {{{{"tent", digits("121"), T::kNoun}, {"see", digits("0"), T::kVerb}}, true},
                      {{{"ray", digits("4"), std::nullopt}}, false}}};
  std::stringstream buf;
  write_records(buf, enc, "sentence");
  EXPECT_EQ(buf.str().substr(0, buf.str().find('\n')),
            R"({"encoder":"sentence","source":"12104","type":"encoding"})");
  EXPECT_EQ(read_records(buf), enc);
}

TEST(Records, RejectsMalformedInput) {
  std::istringstream no_header(R"({"type":"word","sentence":0,"closed":true,"word":"a","span":"1","slot":null})");
  EXPECT_THROW(read_records(no_header), ParseError);
  std::istringstream garbage("{not json\n");
  EXPECT_THROW(read_records(garbage), ParseError);
  std::istringstream empty("");
  EXPECT_THROW(read_records(empty), DataError);
  std::istringstream bad_span(
      "{\"type\":\"encoding\",\"source\":\"1\"}\n"
      R"({"type":"word","sentence":0,"closed":true,"word":"a","span":"x","slot":null})");
  EXPECT_THROW(read_records(bad_span), ParseError);
}
