#pragma once

#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "majorsys/phonetics.hpp"
#include "majorsys/tags.hpp"

namespace majorsys {

struct EncodedWord {
  std::string word;
  DigitString span;
  std::optional<UniversalTag> slot;  // template slot or chosen POS, when the encoder has one
  friend bool operator==(const EncodedWord&, const EncodedWord&) = default;
};

struct EncodedSentence {
  std::vector<EncodedWord> words;
  bool closed = false;  // ended by a sentence break rather than by running out of digits
  friend bool operator==(const EncodedSentence&, const EncodedSentence&) = default;
};

/// Output of an encoder: sentences of words, each carrying the digits it spells.
struct Encoding {
  DigitString source;
  std::vector<EncodedSentence> sentences;

  std::size_t word_count() const {
    std::size_t n = 0;
    for (const auto& s : sentences) n += s.words.size();
    return n;
  }

  std::vector<std::string> words() const {
    std::vector<std::string> out;
    for (const auto& s : sentences) {
      for (const auto& w : s.words) out.push_back(w.word);
    }
    return out;
  }

  DigitString concatenated_spans() const {
    DigitString d;
    for (const auto& s : sentences) {
      for (const auto& w : s.words) d += w.span;
    }
    return d;
  }

  /// "Officiate wasteland." style rendering: closed sentences end with a
  /// period, every sentence starts with a capital.
  std::string text() const {
    std::string out;
    for (const auto& s : sentences) {
      if (s.words.empty()) continue;
      if (!out.empty()) out += ' ';
      std::string sentence;
      for (const auto& w : s.words) {
        if (!sentence.empty()) sentence += ' ';
        sentence += w.word;
      }
      sentence[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(sentence[0])));
      out += sentence;
      if (s.closed) out += '.';
    }
    return out;
  }

  friend bool operator==(const Encoding&, const Encoding&) = default;
};

}  // namespace majorsys
