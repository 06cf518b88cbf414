#pragma once

// The six digit -> word-sequence encoders and the sentence post-processing pass.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "majorsys/encoding.hpp"
#include "majorsys/error.hpp"
#include "majorsys/index.hpp"
#include "majorsys/langmodel.hpp"
#include "majorsys/phonetics.hpp"
#include "majorsys/tags.hpp"

namespace majorsys {

enum class EncoderKind { kRandom, kUnigram, kNgram, kPos, kChunk, kSentence };

inline constexpr std::array<EncoderKind, 6> kAllEncoders = {
    EncoderKind::kRandom, EncoderKind::kUnigram, EncoderKind::kNgram,
    EncoderKind::kPos,    EncoderKind::kChunk,   EncoderKind::kSentence};

constexpr std::string_view encoder_name(EncoderKind k) noexcept {
  switch (k) {
    case EncoderKind::kRandom: return "random";
    case EncoderKind::kUnigram: return "unigram";
    case EncoderKind::kNgram: return "ngram";
    case EncoderKind::kPos: return "pos";
    case EncoderKind::kChunk: return "chunk";
    case EncoderKind::kSentence: return "sentence";
  }
  return "?";
}

inline std::optional<EncoderKind> parse_encoder(std::string_view name) noexcept {
  for (auto k : kAllEncoders) {
    if (encoder_name(k) == name) return k;
  }
  return std::nullopt;
}

enum class NgramMode { kArgmax, kSample };

struct EncoderConfig {
  EncoderKind kind = EncoderKind::kSentence;
  std::size_t n = 3;
  double alpha = 0.1;
  double weight_power = 10.0;
  NgramMode ngram_mode = NgramMode::kArgmax;
  std::uint64_t seed = 0;
  std::size_t chunk_size = 3;
  TagSet skippable_tags = kSkippableTags;
  std::size_t max_resamples = 100;
  bool post_process = true;

  void validate() const {
    if (weight_power < 0.0) throw std::invalid_argument("weight power must be >= 0");
    if (chunk_size < 1) throw std::invalid_argument("chunk size must be >= 1");
  }
};

namespace detail {

inline EncodedWord make_word(const EncodingIndex& index, WordId id,
                             std::optional<UniversalTag> slot = std::nullopt) {
  const auto& w = index.word(id);
  return {w.word, w.digits, slot};
}

/// Rolling context of the last order-1 tokens, padded with <s> at sentence start.
class Context {
 public:
  explicit Context(std::size_t order) : order_(order) { reset(); }
  void reset() { tokens_.assign(order_ > 1 ? order_ - 1 : 0, kBos); }
  void push(TokenId t) {
    if (tokens_.empty()) return;
    tokens_.erase(tokens_.begin());
    tokens_.push_back(t);
  }
  std::span<const TokenId> tokens() const { return tokens_; }

 private:
  std::size_t order_;
  std::vector<TokenId> tokens_;
};

inline Encoding flat_encoding(const DigitString& digits, std::vector<EncodedWord> words) {
  Encoding e{digits, {}};
  if (!words.empty()) e.sentences.push_back({std::move(words), false});
  return e;
}

}  // namespace detail

/// Greedy baseline: longest-prefix words, one picked uniformly at random.
inline Encoding encode_random(const DigitString& digits, const EncodingIndex& index, Rng& rng) {
  std::vector<EncodedWord> out;
  for (std::size_t pos = 0; pos < digits.size();) {
    const auto [k, words] = index.max_prefix_candidates(digits.substr(pos));
    std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
    out.push_back(detail::make_word(index, words[pick(rng)]));
    pos += k;
  }
  return detail::flat_encoding(digits, std::move(out));
}

/// Greedy baseline: longest-prefix words, most frequent first (ties alphabetical).
inline Encoding encode_unigram(const DigitString& digits, const EncodingIndex& index) {
  std::vector<EncodedWord> out;
  for (std::size_t pos = 0; pos < digits.size();) {
    const auto [k, words] = index.max_prefix_candidates(digits.substr(pos));
    WordId best = words.front();
    for (auto id : words) {
      if (index.word(id).frequency > index.word(best).frequency) best = id;
    }
    out.push_back(detail::make_word(index, best));
    pos += k;
  }
  return detail::flat_encoding(digits, std::move(out));
}

/// Word-at-a-time encoder scored by the word n-gram model. The end-of-sentence
/// token competes as a zero-digit candidate, except at the start of a sentence.
inline Encoding encode_ngram(const DigitString& digits, const EncodingIndex& index,
                             const LanguageModel& lm, const EncoderConfig& config, Rng& rng) {
  Encoding enc{digits, {}};
  EncodedSentence current;
  detail::Context ctx(lm.words.order());
  std::vector<double> weights;

  for (std::size_t pos = 0; pos < digits.size();) {
    const auto remaining = digits.substr(pos);
    const auto cands = index.prefix_candidates(remaining);
    if (cands.empty()) {
      throw UnencodableError("no word encodes the digits starting at '" + remaining.str() + "'");
    }
    const bool allow_break = !current.words.empty();
    weights.clear();
    for (const auto& c : cands) weights.push_back(lm.score(ctx.tokens(), index.word(c.id).token));
    const double break_score = allow_break ? lm.score(ctx.tokens(), kEos) : 0.0;

    std::optional<std::size_t> choice;  // nullopt: sentence break
    if (config.ngram_mode == NgramMode::kArgmax) {
      std::size_t best = 0;
      for (std::size_t i = 1; i < cands.size(); ++i) {
        if (weights[i] > weights[best]) best = i;
      }
      if (!(allow_break && break_score > weights[best])) choice = best;
    } else {
      weights.push_back(break_score);
      double total = 0.0;
      for (double w : weights) total += w;
      if (total <= 0.0) {
        choice = 0;
      } else {
        std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
        const auto i = pick(rng);
        if (i < cands.size()) choice = i;
      }
    }

    if (!choice) {
      current.closed = true;
      enc.sentences.push_back(std::move(current));
      current = {};
      ctx.reset();
      continue;
    }
    const auto& c = cands[*choice];
    current.words.push_back(detail::make_word(index, c.id));
    ctx.push(index.word(c.id).token);
    pos += c.digits_consumed;
  }
  if (!current.words.empty()) enc.sentences.push_back(std::move(current));
  return enc;
}

/// Word-at-a-time encoder whose next POS comes from the tag trigram model;
/// falls through to less likely tags when a tag has no candidate word.
inline Encoding encode_pos(const DigitString& digits, const EncodingIndex& index,
                           const LanguageModel& lm) {
  std::vector<EncodedWord> out;
  detail::Context ctx(lm.words.order());
  PosModel::Context tag_ctx{};
  for (std::size_t pos = 0; pos < digits.size();) {
    const auto remaining = digits.substr(pos);
    std::optional<Candidate> chosen;
    UniversalTag chosen_tag{};
    for (auto tag : lm.tags.most_likely_tags(tag_ctx)) {
      const auto cands = index.prefix_candidates(remaining, TagSet{tag});
      if (cands.empty()) continue;
      double best = -1.0;
      for (const auto& c : cands) {
        const double s = lm.score(ctx.tokens(), index.word(c.id).token);
        if (s > best) {
          best = s;
          chosen = c;
        }
      }
      chosen_tag = tag;
      break;
    }
    if (!chosen) {
      throw UnencodableError("no POS tag yields a word for the digits starting at '" +
                             remaining.str() + "'");
    }
    out.push_back(detail::make_word(index, chosen->id, chosen_tag));
    ctx.push(index.word(chosen->id).token);
    tag_ctx = {tag_ctx[1], chosen_tag};
    pos += chosen->digits_consumed;
  }
  return detail::flat_encoding(digits, std::move(out));
}

enum class PhraseKind { kNounPhrase, kVerbPhrase };

/// One- and two-word POS shapes a chunk may take.
struct PhrasePattern {
  std::vector<UniversalTag> tags;
};

inline const std::vector<PhrasePattern>& phrase_patterns(PhraseKind kind) {
  using T = UniversalTag;
  static const std::vector<PhrasePattern> np = {
      {{T::kNoun}}, {{T::kPron}}, {{T::kDet, T::kNoun}}, {{T::kAdj, T::kNoun}}};
  static const std::vector<PhrasePattern> vp = {
      {{T::kVerb}}, {{T::kVerb, T::kAdv}}, {{T::kAdv, T::kVerb}}, {{T::kVerb, T::kPrt}}};
  return kind == PhraseKind::kNounPhrase ? np : vp;
}

/// Verb-plus-object shapes, tried only when no primary shape fits a chunk.
/// A few digit triples (616, 996, ...) have no other verb-phrase realization.
inline const std::vector<PhrasePattern>& fallback_patterns(PhraseKind kind) {
  using T = UniversalTag;
  static const std::vector<PhrasePattern> np = {{{T::kNoun, T::kNoun}}};
  static const std::vector<PhrasePattern> vp = {{{T::kVerb, T::kNoun}}, {{T::kVerb, T::kPron}}};
  return kind == PhraseKind::kNounPhrase ? np : vp;
}

/// Best one- or two-word realization of `chunk` as the given phrase, scored
/// by the product of bigram scores starting from `prev`. Empty when none exists.
inline std::vector<EncodedWord> realize_chunk(const DigitString& chunk,
                                              const std::vector<PhrasePattern>& patterns,
                                              TokenId prev, const EncodingIndex& index,
                                              const LanguageModel& lm) {
  std::vector<EncodedWord> best;
  double best_score = -1.0;
  for (const auto& pattern : patterns) {
    if (pattern.tags.size() == 1) {
      for (auto id : index.exact_candidates(chunk, TagSet{pattern.tags[0]})) {
        const double s = lm.bigram(prev, index.word(id).token);
        if (s > best_score) {
          best_score = s;
          best = {detail::make_word(index, id, pattern.tags[0])};
        }
      }
      continue;
    }
    for (std::size_t split = 1; split < chunk.size(); ++split) {
      const auto firsts = index.exact_candidates(chunk.substr(0, split), TagSet{pattern.tags[0]});
      if (firsts.empty()) continue;
      const auto seconds = index.exact_candidates(chunk.substr(split), TagSet{pattern.tags[1]});
      for (auto a : firsts) {
        const auto ta = index.word(a).token;
        const double sa = lm.bigram(prev, ta);
        if (sa <= best_score) continue;  // the second factor is at most 1
        for (auto b : seconds) {
          const double s = sa * lm.bigram(ta, index.word(b).token);
          if (s > best_score) {
            best_score = s;
            best = {detail::make_word(index, a, pattern.tags[0]),
                    detail::make_word(index, b, pattern.tags[1])};
          }
        }
      }
    }
  }
  return best;
}

inline std::vector<EncodedWord> realize_chunk(const DigitString& chunk, PhraseKind kind,
                                              TokenId prev, const EncodingIndex& index,
                                              const LanguageModel& lm) {
  auto words = realize_chunk(chunk, phrase_patterns(kind), prev, index, lm);
  if (words.empty()) words = realize_chunk(chunk, fallback_patterns(kind), prev, index, lm);
  return words;
}

/// Fixed-length chunks realized as noun/verb phrases; every three chunks form
/// a <noun phrase><verb phrase><noun phrase> sentence.
inline Encoding encode_chunk(const DigitString& digits, const EncodingIndex& index,
                             const LanguageModel& lm, const EncoderConfig& config) {
  config.validate();
  static constexpr std::array<PhraseKind, 3> kShape = {
      PhraseKind::kNounPhrase, PhraseKind::kVerbPhrase, PhraseKind::kNounPhrase};
  Encoding enc{digits, {}};
  EncodedSentence current;
  std::size_t slot = 0;
  for (std::size_t pos = 0; pos < digits.size(); pos += config.chunk_size) {
    const auto chunk = digits.substr(pos, config.chunk_size);
    const TokenId prev = current.words.empty() ? kBos : index.word(*index.find(current.words.back().word)).token;
    auto words = realize_chunk(chunk, kShape[slot], prev, index, lm);
    if (words.empty()) {
      throw UnencodableError("chunk '" + chunk.str() + "' has no " +
                             (kShape[slot] == PhraseKind::kNounPhrase ? "noun" : "verb") +
                             " phrase realization");
    }
    for (auto& w : words) current.words.push_back(std::move(w));
    if (++slot == kShape.size()) {
      current.closed = true;
      enc.sentences.push_back(std::move(current));
      current = {};
      slot = 0;
    }
  }
  if (!current.words.empty()) {
    current.closed = true;
    enc.sentences.push_back(std::move(current));
  }
  return enc;
}

/// Tags admitted in a template slot: the slot tag itself, plus NOUN for PRON slots.
inline TagSet slot_tags(UniversalTag slot) {
  TagSet allowed{slot};
  if (slot == UniversalTag::kPron) allowed.insert(UniversalTag::kNoun);
  return allowed;
}

/// Re-picks each word among the words spelling the same digits (and fitting
/// the same slot), maximising bigram(prev, w) * bigram(w, next). Each
/// replacement strictly raises the sentence's bigram chain score, so passes
/// are repeated until nothing changes; the result is a fixed point.
inline Encoding post_process(Encoding enc, const EncodingIndex& index, const LanguageModel& lm) {
  constexpr int kMaxPasses = 64;
  const auto token_of = [&](const std::string& w) {
    auto id = index.find(w);
    return id ? index.word(*id).token : kUnknown;
  };
  for (int pass = 0; pass < kMaxPasses; ++pass) {
    bool changed = false;
    for (auto& sentence : enc.sentences) {
      auto& words = sentence.words;
      for (std::size_t i = 0; i < words.size(); ++i) {
        const TokenId prev = i > 0 ? token_of(words[i - 1].word) : kBos;
        std::optional<TokenId> next;
        if (i + 1 < words.size()) {
          next = token_of(words[i + 1].word);
        } else if (sentence.closed) {
          next = kEos;
        }
        const auto fit = [&](TokenId t) {
          return lm.bigram(prev, t) * (next ? lm.bigram(t, *next) : 1.0);
        };
        const auto cands = words[i].slot ? index.exact_candidates(words[i].span, slot_tags(*words[i].slot))
                                         : index.exact_candidates(words[i].span);
        double best_score = fit(token_of(words[i].word));
        std::optional<WordId> best;
        for (auto id : cands) {
          const double s = fit(index.word(id).token);
          if (s > best_score) {
            best_score = s;
            best = id;
          }
        }
        if (best && index.word(*best).word != words[i].word) {
          words[i].word = index.word(*best).word;
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
  return enc;
}

/// The template-driven encoder: sample a POS template, fill each slot with the
/// word maximising score * digits^power, skip empty skippable slots, resample
/// the template when a required slot cannot be filled.
inline Encoding encode_sentence(const DigitString& digits, const EncodingIndex& index,
                                const LanguageModel& lm, const TemplateStore& templates,
                                const EncoderConfig& config, Rng& rng) {
  config.validate();
  if (templates.empty()) throw DataError("no sentence templates survived filtering; the corpus is too small");
  Encoding enc{digits, {}};
  detail::Context ctx(lm.words.order());

  for (std::size_t pos = 0; pos < digits.size();) {
    bool filled = false;
    for (std::size_t attempt = 0; attempt < config.max_resamples && !filled; ++attempt) {
      const auto& tmpl = templates.sample(rng);
      EncodedSentence sentence;
      ctx.reset();
      std::size_t p = pos;
      bool failed = false;
      for (auto slot : tmpl.tags) {
        if (p == digits.size()) break;
        if (slot == UniversalTag::kPunct) continue;
        const auto cands = index.prefix_candidates(digits.substr(p), slot_tags(slot));
        if (cands.empty()) {
          if (config.skippable_tags.contains(slot)) continue;
          failed = true;
          break;
        }
        const Candidate* best = nullptr;
        double best_score = -1.0;
        for (const auto& c : cands) {
          const double s = lm.score(ctx.tokens(), index.word(c.id).token) *
                           std::pow(static_cast<double>(c.digits_consumed), config.weight_power);
          if (s > best_score) {
            best_score = s;
            best = &c;
          }
        }
        sentence.words.push_back(detail::make_word(index, best->id, slot));
        ctx.push(index.word(best->id).token);
        p += best->digits_consumed;
      }
      if (failed || p == pos) continue;
      sentence.closed = true;
      enc.sentences.push_back(std::move(sentence));
      pos = p;
      filled = true;
    }
    if (!filled) {
      throw UnencodableError("no sentence template could be filled for the digits starting at '" +
                             digits.substr(pos).str() + "' after " +
                             std::to_string(config.max_resamples) + " resamples");
    }
  }
  return config.post_process ? post_process(std::move(enc), index, lm) : enc;
}

/// Models an encoder may need; all shared and read-only.
struct EncoderResources {
  const EncodingIndex& index;
  const LanguageModel& lm;
};

/// Runs the configured encoder with an RNG seeded from config.seed.
inline Encoding encode(const DigitString& digits, const EncoderResources& res,
                       const EncoderConfig& config) {
  config.validate();
  Rng rng(config.seed);
  switch (config.kind) {
    case EncoderKind::kRandom: return encode_random(digits, res.index, rng);
    case EncoderKind::kUnigram: return encode_unigram(digits, res.index);
    case EncoderKind::kNgram: return encode_ngram(digits, res.index, res.lm, config, rng);
    case EncoderKind::kPos: return encode_pos(digits, res.index, res.lm);
    case EncoderKind::kChunk: return encode_chunk(digits, res.index, res.lm, config);
    case EncoderKind::kSentence:
      return encode_sentence(digits, res.index, res.lm, res.lm.templates, config, rng);
  }
  return {};
}

}  // namespace majorsys
