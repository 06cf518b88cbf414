#pragma once

// Shared test helpers: tiny in-memory worlds and the real-corpus resources.

#include <filesystem>
#include <sstream>
#include <stdexcept>
#include <string>

#include "majorsys/majorsys.hpp"

#ifndef MAJORSYS_DATA_DIR
#define MAJORSYS_DATA_DIR "data"
#endif
#ifndef MAJORSYS_TEST_CACHE_DIR
#define MAJORSYS_TEST_CACHE_DIR "test-cache"
#endif

namespace majorsys::testing {

/// Tag map whose "Brown" tags are the lowercase universal names.
inline TagMap identity_tag_map() {
  std::istringstream in(
      "noun NOUN\nverb VERB\ndet DET\nadj ADJ\nadv ADV\npron PRON\nconj CONJ\n"
      "adp ADP\nprt PRT\nnum NUM\nx X\n. .\n");
  return TagMap::parse(in);
}

inline PronunciationDict dict_from(const std::string& text) {
  std::istringstream in(text);
  return parse_cmudict(in);
}

inline TaggedCorpus corpus_from(const std::string& text, const TagMap& tags = identity_tag_map()) {
  TaggedCorpus c;
  std::istringstream in(text);
  c.read(in, tags);
  return c;
}

/// Toy corpora are too small for five-word templates.
inline ModelOptions toy_options() {
  ModelOptions o;
  o.min_template_words = 1;
  return o;
}

/// Builds a full resource bundle from cmudict text and word/tag corpus text.
inline Resources world(const std::string& dict_text, const std::string& corpus_text,
                       const ModelOptions& opt = toy_options()) {
  return make_resources(dict_from(dict_text), corpus_from(corpus_text), opt);
}

// tent/dent -> 121, tin -> 12, toe -> 1, net -> 21, plus one word per digit.
inline constexpr const char* kToyDict =
    "TENT  T EH1 N T\n"
    "DENT  D EH1 N T\n"
    "TIN  T IH1 N\n"
    "TOE  T OW1\n"
    "NET  N EH1 T\n"
    "THE  DH AH0\n"
    "A  AH0\n"
    "SEE  S IY1\n"
    "NO  N OW1\n"
    "ME  M IY1\n"
    "RAY  R EY1\n"
    "LOW  L OW1\n"
    "SHOE  SH UW1\n"
    "KEY  K IY1\n"
    "FEW  F Y UW1\n"
    "PIE  P AY1\n"
    "HAY  HH EY1\n";

// Every toy word appears at least once; tent outnumbers dent.
inline constexpr const char* kToyCorpus =
    "the/det tent/noun see/verb the/det net/noun ./.\n"
    "me/pron see/verb a/det dent/noun ./.\n"
    "no/det tin/noun low/verb ./.\n"
    "ray/noun key/verb toe/noun ./.\n"
    "shoe/noun few/adj pie/noun tent/noun see/verb ./.\n"
    "hay/noun see/verb pie/noun ./.\n"
    "the/det tent/noun see/verb the/det net/noun ./.\n";

inline const Resources& toy() {
  static const Resources r = world(kToyDict, kToyCorpus);
  return r;
}

inline const std::filesystem::path& data_dir() {
  static const std::filesystem::path dir = MAJORSYS_DATA_DIR;
  return dir;
}

inline DataPaths real_paths() {
  return {data_dir() / "cmudict.dict", data_dir() / "brown", data_dir() / "brown-universal.map",
          std::filesystem::path(MAJORSYS_TEST_CACHE_DIR)};
}

/// Brown + cmudict resources, loaded once per test binary (cached on disk).
inline const Resources& real() {
  static const Resources r = [] {
    const auto p = real_paths();
    if (!std::filesystem::exists(p.cmudict) || !std::filesystem::exists(p.corpus)) {
      throw std::runtime_error("corpus data missing under " + data_dir().string() +
                               "; run tools/fetch_data.sh");
    }
    return load_resources(p);
  }();
  return r;
}

/// Random digit string of the given length.
inline DigitString random_digits(Rng& rng, std::size_t len) {
  std::uniform_int_distribution<int> d(0, 9);
  DigitString s;
  for (std::size_t i = 0; i < len; ++i) s.push_back(d(rng));
  return s;
}

}  // namespace majorsys::testing
