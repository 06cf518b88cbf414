#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "fixtures.hpp"

using namespace majorsys;
using namespace majorsys::testing;

namespace {

TagMap brown_map() {
  std::ifstream in(data_dir() / "brown-universal.map");
  return TagMap::parse(in);
}

std::vector<std::string> symbols(const Pronunciation& p) {
  std::vector<std::string> out;
  for (const auto& ph : p) out.emplace_back(ph.symbol());
  return out;
}

using Strings = std::vector<std::string>;

}  // namespace

TEST(Cmudict, ParsesClassicLine) {
  const auto d = dict_from("TENT  T EH1 N T\n");
  ASSERT_EQ(d.size(), 1u);
  ASSERT_EQ(d.at("tent").size(), 1u);
  EXPECT_EQ(symbols(d.at("tent")[0]), (Strings{"T", "EH", "N", "T"}));
}

TEST(Cmudict, SkipsCommentsAndFoldsAlternates) {
  const auto d = dict_from(";;; comment\nA  AH0\nA(1)  EY1\n\nB  B IY1\n");
  ASSERT_EQ(d.size(), 2u);
  ASSERT_EQ(d.at("a").size(), 2u);
  EXPECT_EQ(symbols(d.at("a")[0]), (Strings{"AH"}));
  EXPECT_EQ(symbols(d.at("a")[1]), (Strings{"EY"}));
}

TEST(Cmudict, AcceptsModernLayout) {
  const auto d = dict_from("aalborg AO1 L B AO0 R G # place, danish\nabbe(2) AE1 B IY0\n");
  EXPECT_EQ(symbols(d.at("aalborg")[0]), (Strings{"AO", "L", "B", "AO", "R", "G"}));
  EXPECT_EQ(d.at("abbe").size(), 1u);
}

TEST(Cmudict, ErrorsCarryLineNumbers) {
  try {
    dict_from("TENT  T EH1 N T\nBAD\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  try {
    dict_from("OK  OW1 K EY1\nXYZ  Q1 R\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_NE(std::string(e.what()).find("Q"), std::string::npos);
  }
  EXPECT_THROW(dict_from("WORD(x)  W ER1 D\n"), ParseError);
}

TEST(Cmudict, RealFileEntryCount) {
  // Oracle: count non-comment lines and alternates independently of the parser.
  std::ifstream in(data_dir() / "cmudict.dict");
  ASSERT_TRUE(in) << "run tools/fetch_data.sh";
  std::size_t lines = 0, alternates = 0;
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line.starts_with(";;;")) continue;
    ++lines;
    const auto head = line.substr(0, line.find(' '));
    if (head.back() == ')' && head.find('(') != std::string::npos) ++alternates;
  }
  in.clear();
  in.seekg(0);
  const auto d = parse_cmudict(in);
  EXPECT_EQ(d.size(), lines - alternates);
  std::size_t prons = 0;
  for (const auto& [w, p] : d) prons += p.size();
  EXPECT_EQ(prons, lines);
}

TEST(TagMapTest, CompoundAndUnknownTags) {
  const auto m = brown_map();
  EXPECT_EQ(m.map("np-tl"), UniversalTag::kNoun);
  EXPECT_EQ(m.map("pps+bez"), UniversalTag::kPron);
  EXPECT_EQ(m.map("--"), UniversalTag::kPunct);
  EXPECT_EQ(m.map("at"), UniversalTag::kDet);
  EXPECT_EQ(m.map("fw-nn"), UniversalTag::kOther);
  EXPECT_EQ(m.map("zzz"), UniversalTag::kOther);
  EXPECT_EQ(m.map("NN"), UniversalTag::kNoun);
}

TEST(TagMapTest, RejectsBadRows) {
  std::istringstream bad1("nn NOUN extra\n"), bad2("nn NOUNISH\n"), dup("nn NOUN\nnn VERB\n");
  EXPECT_THROW(TagMap::parse(bad1), ParseError);
  EXPECT_THROW(TagMap::parse(bad2), ParseError);
  EXPECT_THROW(TagMap::parse(dup), ParseError);
}

TEST(TaggedCorpusTest, MapsAndLowercases) {
  std::istringstream in("The/at dog/nn ran/vbd ./.\n\n\tfulton/np-tl\n");
  const auto s = parse_tagged_corpus(in, brown_map());
  ASSERT_EQ(s.size(), 2u);
  const std::vector<TaggedToken> first = {{"the", UniversalTag::kDet},
                                          {"dog", UniversalTag::kNoun},
                                          {"ran", UniversalTag::kVerb},
                                          {".", UniversalTag::kPunct}};
  EXPECT_EQ(s[0].tokens, first);
  EXPECT_EQ(s[1].tokens, (std::vector<TaggedToken>{{"fulton", UniversalTag::kNoun}}));
}

TEST(TaggedCorpusTest, KeepsDottedTokensAndUsesLastSlash) {
  std::istringstream in("P.M./nn 1/2/cd\n");
  const auto s = parse_tagged_corpus(in, brown_map());
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].tokens[0].word, "p.m.");
  EXPECT_EQ(s[0].tokens[1].word, "1/2");
  EXPECT_EQ(s[0].tokens[1].tag, UniversalTag::kNum);
}

TEST(TaggedCorpusTest, TokenWithoutTagReportsPosition) {
  std::istringstream in("ok/nn\nfine/jj broken\n");
  try {
    parse_tagged_corpus(in, brown_map());
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_NE(std::string(e.what()).find("token 2"), std::string::npos);
  }
  std::istringstream trailing("word/\n");
  EXPECT_THROW(parse_tagged_corpus(trailing, brown_map()), ParseError);
}

TEST(TaggedCorpusTest, StatsCountRawAndLoweredTypes) {
  const auto c = corpus_from("The/det the/det dog/noun\nDog/noun ./.\n");
  const auto s = c.stats();
  EXPECT_EQ(s.sentences, 2u);
  EXPECT_EQ(s.tokens, 5u);
  EXPECT_EQ(s.raw_types, 5u);
  EXPECT_EQ(s.types, 3u);
}

TEST(LexiconTest, SingletonIntersection) {
  const auto lex = build_lexicon(dict_from("TENT  T EH1 N T\nCAMP  K AE1 M P\n"),
                                 corpus_from("tent/noun ./.\n").sentences());
  ASSERT_EQ(lex.size(), 1u);
  const auto* e = lex.find("tent");
  ASSERT_NE(e, nullptr);
  EXPECT_EQ(e->dominant_pos, UniversalTag::kNoun);
  EXPECT_EQ(e->canonical_digits.str(), "121");
  EXPECT_EQ(e->frequency, 1u);
  EXPECT_EQ(lex.find("camp"), nullptr);
}

TEST(LexiconTest, DominantPosMajorityThenAlphabetical) {
  const auto lex = build_lexicon(
      dict_from("RUN  R AH1 N\nTIE  T AY1\n"),
      corpus_from("run/verb run/noun run/verb\ntie/verb tie/noun\nTIE/adj\n").sentences());
  EXPECT_EQ(lex.find("run")->dominant_pos, UniversalTag::kVerb);
  EXPECT_EQ(lex.find("run")->frequency, 3u);
  // tie: ADJ, NOUN, VERB one each -> ADJ comes first alphabetically.
  EXPECT_EQ(lex.find("tie")->dominant_pos, UniversalTag::kAdj);
}

TEST(LexiconTest, PrimaryPronunciationDefinesDigits) {
  const auto lex = build_lexicon(dict_from("READ  R IY1 D\nREAD(1)  R EH1 D Z\n"),
                                 corpus_from("read/verb\n").sentences());
  EXPECT_EQ(lex.find("read")->canonical_digits.str(), "41");
  EXPECT_EQ(lex.find("read")->pronunciations.size(), 2u);
}

TEST(LexiconTest, ZeroDigitWordsAreRetained) {
  const auto lex = build_lexicon(dict_from("AH  AA1\n"), corpus_from("ah/x\n").sentences());
  EXPECT_TRUE(lex.find("ah")->canonical_digits.empty());
}

TEST(LexiconTest, EmptyIntersectionThrows) {
  EXPECT_THROW(build_lexicon(dict_from("TENT  T EH1 N T\n"), corpus_from("dog/noun\n").sentences()),
               DataError);
}

TEST(LexiconCache, RoundTripIsStable) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> letter('a', 'z'), len(1, 8), nphones(1, 6), nprons(1, 3), freq(1, 500);
  std::uniform_int_distribution<std::size_t> phone(0, kArpabet.size() - 1);
  for (int trial = 0; trial < 20; ++trial) {
    std::ostringstream dict, corpus;
    for (int w = 0; w < 40; ++w) {
      std::string word;
      for (int i = len(rng); i > 0; --i) word.push_back(static_cast<char>(letter(rng)));
      for (int p = nprons(rng), k = 0; k < p; ++k) {
        dict << word << (k ? "(" + std::to_string(k) + ")" : "") << ' ';
        for (int i = nphones(rng); i > 0; --i) dict << ' ' << kArpabet[phone(rng)] << (i % 2);
        dict << '\n';
      }
      for (int f = freq(rng) % 4 + 1; f > 0; --f) corpus << word << "/noun ";
      corpus << "\n";
    }
    const auto c = corpus_from(corpus.str());
    const auto lex = build_lexicon(dict_from(dict.str()), c.sentences(), c.stats());
    std::stringstream first;
    write_lexicon(first, lex);
    const auto back = read_lexicon(first);
    EXPECT_EQ(back, lex);
    std::stringstream second;
    write_lexicon(second, back);
    EXPECT_EQ(first.str(), second.str());
  }
}

TEST(LexiconCache, RejectsWrongVersionAndCorruptRows) {
  std::istringstream v("majorsys-lexicon 99\nstats 0 0 0 0\n");
  EXPECT_THROW(read_lexicon(v), ParseError);
  std::istringstream bad("majorsys-lexicon 1\nstats 1 1 1 1\ntent\t999\tNOUN\t1\tT EH N T\n");
  EXPECT_THROW(read_lexicon(bad), ParseError);
}
