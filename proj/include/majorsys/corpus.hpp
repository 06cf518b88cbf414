#pragma once

// Ingestion of the CMU Pronouncing Dictionary and a Brown-format tagged
// corpus, and construction of the intersected lexicon.

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "majorsys/error.hpp"
#include "majorsys/phonetics.hpp"
#include "majorsys/tags.hpp"

namespace majorsys {

inline std::string to_lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

/// word -> pronunciations in file order (primary first).
using PronunciationDict = std::map<std::string, std::vector<Pronunciation>, std::less<>>;

/// Parses cmudict text. Accepts the classic layout (";;;" comments, "WORD(1)"
/// alternates) as well as the newer one with trailing "# ..." comments.
inline PronunciationDict parse_cmudict(std::istream& in, const std::string& source = "<cmudict>") {
  PronunciationDict dict;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.starts_with(";;;")) continue;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string head;
    if (!(fields >> head)) continue;

    std::string word = head;
    if (word.size() > 1 && word.back() == ')') {
      const auto open = word.rfind('(');
      const bool numeric =
          open != std::string::npos && open > 0 && open + 2 < word.size() &&
          std::all_of(word.begin() + open + 1, word.end() - 1,
                      [](unsigned char c) { return std::isdigit(c); });
      if (!numeric) throw ParseError(source, lineno, "malformed alternate marker in '" + head + "'");
      word.erase(open);
    }

    Pronunciation pron;
    std::string phone;
    while (fields >> phone) {
      try {
        pron.push_back(strip_stress(phone));
      } catch (const UnknownSymbolError& e) {
        throw ParseError(source, lineno, e.what());
      }
    }
    if (pron.empty()) throw ParseError(source, lineno, "entry '" + head + "' has no phones");
    dict[to_lower(word)].push_back(std::move(pron));
  }
  return dict;
}

struct TaggedToken {
  std::string word;
  UniversalTag tag;
  friend bool operator==(const TaggedToken&, const TaggedToken&) = default;
};

struct TaggedSentence {
  std::vector<TaggedToken> tokens;
};

/// Counts over an ingested corpus. `raw_types` counts distinct tokens before
/// lowercasing; `types` after.
struct CorpusStats {
  std::uint64_t sentences = 0;
  std::uint64_t tokens = 0;
  std::uint64_t raw_types = 0;
  std::uint64_t types = 0;
};

/// Accumulates sentences from one or more Brown-format sources.
class TaggedCorpus {
 public:
  /// One sentence per non-blank line of whitespace-separated "word/TAG" tokens.
  void read(std::istream& in, const TagMap& tags, const std::string& source = "<corpus>") {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      std::istringstream fields(line);
      std::string token;
      TaggedSentence sentence;
      std::size_t column = 0;
      while (fields >> token) {
        ++column;
        const auto slash = token.rfind('/');
        if (slash == std::string::npos || slash == 0 || slash + 1 == token.size()) {
          throw ParseError(source, lineno,
                           "token " + std::to_string(column) + " '" + token + "' has no tag");
        }
        std::string_view raw(token.data(), slash);
        raw_types_.emplace(raw);
        sentence.tokens.push_back({to_lower(raw), tags.map(std::string_view(token).substr(slash + 1))});
      }
      if (!sentence.tokens.empty()) sentences_.push_back(std::move(sentence));
    }
  }

  /// Reads a file, or every corpus file in a directory in name order. Inside a
  /// directory only extension-less, non-uppercase names are read, which skips
  /// README/CONTENTS/cats.txt style metadata.
  void read_path(const std::filesystem::path& path, const TagMap& tags) {
    namespace fs = std::filesystem;
    if (fs::is_directory(path)) {
      std::vector<fs::path> files;
      for (const auto& e : fs::directory_iterator(path)) {
        if (!e.is_regular_file()) continue;
        const auto name = e.path().filename().string();
        const bool has_ext = name.find('.') != std::string::npos;
        const bool upper = std::all_of(name.begin(), name.end(), [](unsigned char c) {
          return !std::islower(c);
        });
        if (!has_ext && !upper) files.push_back(e.path());
      }
      std::sort(files.begin(), files.end());
      if (files.empty()) throw DataError("no corpus files in " + path.string());
      for (const auto& f : files) read_file(f, tags);
    } else {
      read_file(path, tags);
    }
  }

  const std::vector<TaggedSentence>& sentences() const noexcept { return sentences_; }

  CorpusStats stats() const {
    CorpusStats s;
    s.sentences = sentences_.size();
    s.raw_types = raw_types_.size();
    std::unordered_set<std::string_view> lowered;
    for (const auto& sent : sentences_) {
      s.tokens += sent.tokens.size();
      for (const auto& t : sent.tokens) lowered.insert(t.word);
    }
    s.types = lowered.size();
    return s;
  }

 private:
  void read_file(const std::filesystem::path& path, const TagMap& tags) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open corpus file " + path.string());
    read(in, tags, path.string());
  }

  std::vector<TaggedSentence> sentences_;
  std::unordered_set<std::string> raw_types_;
};

inline std::vector<TaggedSentence> parse_tagged_corpus(std::istream& in, const TagMap& tags,
                                                       const std::string& source = "<corpus>") {
  TaggedCorpus corpus;
  corpus.read(in, tags, source);
  return corpus.sentences();
}

struct LexiconEntry {
  std::string word;
  std::vector<Pronunciation> pronunciations;
  DigitString canonical_digits;
  UniversalTag dominant_pos = UniversalTag::kOther;
  std::uint64_t frequency = 0;

  friend bool operator==(const LexiconEntry&, const LexiconEntry&) = default;
};

/// Words present in both the pronunciation dictionary and the tagged corpus.
class Lexicon {
 public:
  Lexicon() = default;
  Lexicon(std::vector<LexiconEntry> entries, CorpusStats stats) : stats_(stats) {
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.word < b.word; });
    entries_ = std::move(entries);
    by_word_.reserve(entries_.size());
    for (std::size_t i = 0; i < entries_.size(); ++i) by_word_.emplace(entries_[i].word, i);
  }

  const LexiconEntry* find(std::string_view word) const {
    auto it = by_word_.find(std::string(word));
    return it == by_word_.end() ? nullptr : &entries_[it->second];
  }

  const std::vector<LexiconEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  const CorpusStats& corpus_stats() const noexcept { return stats_; }

  friend bool operator==(const Lexicon& a, const Lexicon& b) {
    return a.entries_ == b.entries_ && a.stats_.sentences == b.stats_.sentences &&
           a.stats_.tokens == b.stats_.tokens && a.stats_.raw_types == b.stats_.raw_types &&
           a.stats_.types == b.stats_.types;
  }

 private:
  std::vector<LexiconEntry> entries_;
  std::unordered_map<std::string, std::size_t> by_word_;
  CorpusStats stats_;
};

/// Intersects dictionary words with corpus types. Dominant POS is the
/// majority tag; ties go to the alphabetically first tag name.
inline Lexicon build_lexicon(const PronunciationDict& pron,
                             const std::vector<TaggedSentence>& sentences,
                             CorpusStats stats = {}) {
  struct Counts {
    std::uint64_t total = 0;
    std::array<std::uint64_t, kNumTags> by_tag{};
  };
  std::unordered_map<std::string_view, Counts> counts;
  for (const auto& s : sentences) {
    for (const auto& t : s.tokens) {
      auto& c = counts[t.word];
      ++c.total;
      ++c.by_tag[tag_index(t.tag)];
    }
  }

  std::vector<LexiconEntry> entries;
  for (const auto& [word, prons] : pron) {
    auto it = counts.find(word);
    if (it == counts.end() || prons.empty()) continue;
    LexiconEntry e;
    e.word = word;
    e.pronunciations = prons;
    e.canonical_digits = pronunciation_to_digits(prons.front());
    e.frequency = it->second.total;
    const auto& by_tag = it->second.by_tag;
    // max_element returns the first maximum, i.e. the alphabetically first tag.
    e.dominant_pos = kAllTags[std::max_element(by_tag.begin(), by_tag.end()) - by_tag.begin()];
    entries.push_back(std::move(e));
  }
  if (entries.empty()) throw DataError("pronunciation dictionary and corpus share no words");
  if (stats.tokens == 0) {
    for (const auto& s : sentences) stats.tokens += s.tokens.size();
    stats.sentences = sentences.size();
    stats.types = counts.size();
  }
  return Lexicon(std::move(entries), stats);
}

// Lexicon cache: a header line, a stats line, then one tab-separated record
// per word: word, digits, pos, frequency, pronunciations ('|'-separated).
inline constexpr std::string_view kLexiconCacheMagic = "majorsys-lexicon";
inline constexpr int kLexiconCacheVersion = 1;

inline void write_lexicon(std::ostream& out, const Lexicon& lex) {
  const auto& s = lex.corpus_stats();
  out << kLexiconCacheMagic << ' ' << kLexiconCacheVersion << '\n';
  out << "stats " << s.sentences << ' ' << s.tokens << ' ' << s.raw_types << ' ' << s.types << '\n';
  for (const auto& e : lex.entries()) {
    out << e.word << '\t' << e.canonical_digits << '\t' << tag_name(e.dominant_pos) << '\t'
        << e.frequency << '\t';
    for (std::size_t i = 0; i < e.pronunciations.size(); ++i) {
      if (i) out << '|';
      for (std::size_t j = 0; j < e.pronunciations[i].size(); ++j) {
        if (j) out << ' ';
        out << e.pronunciations[i][j];
      }
    }
    out << '\n';
  }
}

inline Lexicon read_lexicon(std::istream& in, const std::string& source = "<lexicon>") {
  std::string line;
  std::size_t lineno = 1;
  if (!std::getline(in, line)) throw ParseError(source, lineno, "empty lexicon cache");
  {
    std::istringstream header(line);
    std::string magic;
    int version = 0;
    if (!(header >> magic >> version) || magic != kLexiconCacheMagic) {
      throw ParseError(source, lineno, "not a lexicon cache");
    }
    if (version != kLexiconCacheVersion) {
      throw ParseError(source, lineno, "unsupported lexicon cache version " + std::to_string(version));
    }
  }
  CorpusStats stats;
  ++lineno;
  {
    std::string key;
    if (!std::getline(in, line) || !(std::istringstream(line) >> key >> stats.sentences >>
                                     stats.tokens >> stats.raw_types >> stats.types) ||
        key != "stats") {
      throw ParseError(source, lineno, "missing stats line");
    }
  }

  std::vector<LexiconEntry> entries;
  while (std::getline(in, line)) {
    ++lineno;
    std::vector<std::string> cols;
    std::size_t start = 0;
    for (;;) {
      const auto tab = line.find('\t', start);
      cols.push_back(line.substr(start, tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (cols.size() != 5) throw ParseError(source, lineno, "expected 5 tab-separated fields");
    LexiconEntry e;
    e.word = cols[0];
    auto digits = DigitString::parse(cols[1]);
    auto pos = parse_tag(cols[2]);
    if (!digits || !pos) throw ParseError(source, lineno, "bad digits or tag");
    e.canonical_digits = *digits;
    e.dominant_pos = *pos;
    try {
      e.frequency = std::stoull(cols[3]);
      std::size_t p = 0;
      while (p <= cols[4].size()) {
        const auto bar = cols[4].find('|', p);
        std::istringstream phones(cols[4].substr(p, bar - p));
        Pronunciation pron;
        std::string ph;
        while (phones >> ph) pron.emplace_back(ph);
        e.pronunciations.push_back(std::move(pron));
        if (bar == std::string::npos) break;
        p = bar + 1;
      }
    } catch (const std::exception& ex) {
      throw ParseError(source, lineno, ex.what());
    }
    if (e.pronunciations.empty() || e.pronunciations.front().empty() ||
        pronunciation_to_digits(e.pronunciations.front()) != e.canonical_digits) {
      throw ParseError(source, lineno, "pronunciation does not match digits");
    }
    entries.push_back(std::move(e));
  }
  return Lexicon(std::move(entries), stats);
}

}  // namespace majorsys
