#pragma once

// Inverse decoding (words -> digits), round-trip checks, and encoding metrics.

#include <cctype>
#include <cmath>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "majorsys/corpus.hpp"
#include "majorsys/encoding.hpp"
#include "majorsys/error.hpp"
#include "majorsys/langmodel.hpp"

namespace majorsys {

namespace detail {

inline bool is_punctuation_only(std::string_view s) {
  for (unsigned char c : s) {
    if (std::isalnum(c)) return false;
  }
  return true;
}

/// Lexicon entry for a surface token, trying the token verbatim before
/// trimming surrounding punctuation ("wasteland." -> "wasteland").
/// Returns nullptr for pure punctuation; throws UnknownWordError otherwise.
inline const LexiconEntry* lookup_token(std::string_view token, const Lexicon& lex) {
  const auto lowered = to_lower(token);
  if (const auto* e = lex.find(lowered)) return e;
  if (is_punctuation_only(lowered)) return nullptr;
  const auto keep = [](unsigned char c) { return std::isalnum(c) || c == '\''; };
  std::size_t b = 0, e = lowered.size();
  while (b < e && !keep(lowered[b])) ++b;
  while (e > b && !keep(lowered[e - 1])) --e;
  const auto trimmed = lowered.substr(b, e - b);
  if (const auto* entry = lex.find(trimmed)) return entry;
  throw UnknownWordError(trimmed);
}

}  // namespace detail

struct DecodeResult {
  DigitString digits;
  /// Words whose alternate pronunciations spell different digits.
  std::vector<std::string> warnings;
};

inline DecodeResult decode_detailed(std::span<const std::string> words, const Lexicon& lex) {
  DecodeResult r;
  for (const auto& w : words) {
    const auto* e = detail::lookup_token(w, lex);
    if (!e) continue;
    r.digits += e->canonical_digits;
    for (std::size_t i = 1; i < e->pronunciations.size(); ++i) {
      const auto alt = pronunciation_to_digits(e->pronunciations[i]);
      if (alt != e->canonical_digits) {
        r.warnings.push_back("'" + e->word + "' also reads as " +
                             (alt.empty() ? std::string("(no digits)") : alt.str()) +
                             "; using " + e->canonical_digits.str());
        break;
      }
    }
  }
  return r;
}

/// Concatenated canonical digits of `words`; punctuation tokens are ignored.
inline DigitString decode(std::span<const std::string> words, const Lexicon& lex) {
  return decode_detailed(words, lex).digits;
}

/// Splits free text on whitespace and decodes it.
inline DecodeResult decode_text(std::string_view text, const Lexicon& lex) {
  std::istringstream in{std::string(text)};
  std::vector<std::string> words;
  for (std::string w; in >> w;) words.push_back(w);
  return decode_detailed(words, lex);
}

struct RoundTripReport {
  bool ok = true;
  std::optional<std::size_t> word_position;  // first offending word, if any
  std::string message;

  explicit operator bool() const noexcept { return ok; }
};

inline RoundTripReport check_roundtrip(const Encoding& enc, const Lexicon& lex) {
  RoundTripReport report;
  DigitString decoded;
  std::size_t position = 0;
  for (const auto& s : enc.sentences) {
    for (const auto& w : s.words) {
      const auto* e = lex.find(w.word);
      if (!e) {
        return {false, position, "word '" + w.word + "' is not in the lexicon"};
      }
      if (e->canonical_digits != w.span) {
        return {false, position,
                "word '" + w.word + "' spells " + e->canonical_digits.str() + " but claims " + w.span.str()};
      }
      decoded += e->canonical_digits;
      ++position;
    }
  }
  if (decoded != enc.source) {
    report.ok = false;
    report.message = "decodes to " + decoded.str() + ", expected " + enc.source.str();
    std::size_t i = 0;
    while (i < decoded.size() && i < enc.source.size() && decoded.view()[i] == enc.source.view()[i]) ++i;
    // Locate the word holding the first mismatching digit.
    std::size_t seen = 0, idx = 0;
    for (const auto& s : enc.sentences) {
      for (const auto& w : s.words) {
        if (!report.word_position && seen + w.span.size() > i) report.word_position = idx;
        seen += w.span.size();
        ++idx;
      }
    }
  }
  return report;
}

struct Metrics {
  std::size_t word_count = 0;
  std::size_t sentence_count = 0;
  double digits_per_word = 0.0;
  double mean_word_frequency = 0.0;
  /// Sum of natural-log word-model scores, context reset at each sentence.
  double model_score = 0.0;
};

inline Metrics compute_metrics(const Encoding& enc, const Lexicon& lex, const LanguageModel& lm) {
  Metrics m;
  std::size_t digits = 0;
  double freq = 0.0;
  const auto order = lm.words.order();
  for (const auto& s : enc.sentences) {
    if (s.words.empty()) continue;
    ++m.sentence_count;
    std::vector<TokenId> ctx(order > 1 ? order - 1 : 0, kBos);
    for (const auto& w : s.words) {
      ++m.word_count;
      digits += w.span.size();
      if (const auto* e = lex.find(w.word)) freq += static_cast<double>(e->frequency);
      const auto tok = lm.vocab.id(w.word);
      m.model_score += std::log(lm.score(ctx, tok));
      if (!ctx.empty()) {
        ctx.erase(ctx.begin());
        ctx.push_back(tok);
      }
    }
  }
  if (m.word_count > 0) {
    m.digits_per_word = static_cast<double>(digits) / static_cast<double>(m.word_count);
    m.mean_word_frequency = freq / static_cast<double>(m.word_count);
  }
  return m;
}

}  // namespace majorsys
