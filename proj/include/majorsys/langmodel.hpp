#pragma once

// Word and POS n-gram models and the sentence-template store.

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "majorsys/corpus.hpp"
#include "majorsys/error.hpp"
#include "majorsys/ngram.hpp"
#include "majorsys/tags.hpp"

namespace majorsys {

using Rng = std::mt19937_64;

constexpr TokenId tag_token(UniversalTag t) noexcept { return 3 + static_cast<TokenId>(tag_index(t)); }

/// Universal-tag n-gram model. A missing context tag stands for sentence-start padding.
class PosModel {
 public:
  using Context = std::array<std::optional<UniversalTag>, 2>;

  explicit PosModel(std::size_t order = 3, double alpha = 0.1) : model_(order, alpha) {}
  explicit PosModel(NgramModel model) : model_(std::move(model)) {}

  void add_sentence(std::span<const UniversalTag> tags) {
    std::vector<TokenId> ids;
    ids.reserve(tags.size());
    for (auto t : tags) ids.push_back(tag_token(t));
    model_.add_sentence(ids);
  }

  double score(const Context& context, UniversalTag t) const {
    std::array<TokenId, 2> ctx{};
    for (std::size_t i = 0; i < 2; ++i) ctx[i] = context[i] ? tag_token(*context[i]) : kBos;
    return model_.score(ctx, tag_token(t));
  }

  /// Tags with a nonzero score after `context`, best first; ties in tag-name order.
  std::vector<UniversalTag> most_likely_tags(const Context& context) const {
    std::vector<std::pair<double, UniversalTag>> scored;
    for (auto t : kAllTags) {
      const double s = score(context, t);
      if (s > 0.0) scored.emplace_back(s, t);
    }
    std::stable_sort(scored.begin(), scored.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    std::vector<UniversalTag> out;
    for (const auto& [s, t] : scored) out.push_back(t);
    return out;
  }

  const NgramModel& ngrams() const noexcept { return model_; }
  NgramModel& ngrams() noexcept { return model_; }

 private:
  NgramModel model_;
};

struct SentenceTemplate {
  std::vector<UniversalTag> tags;
  std::uint64_t frequency = 0;
  friend bool operator==(const SentenceTemplate&, const SentenceTemplate&) = default;
};

/// Tags a filling may leave empty when no word matches.
inline const TagSet kSkippableTags{UniversalTag::kDet, UniversalTag::kAdj, UniversalTag::kAdv};

/// Slots that must produce a word: everything except skippable and
/// punctuation slots.
inline std::size_t guaranteed_words(std::span<const UniversalTag> tags,
                                    const TagSet& skippable = kSkippableTags) {
  return static_cast<std::size_t>(std::count_if(tags.begin(), tags.end(), [&](UniversalTag t) {
    return t != UniversalTag::kPunct && !skippable.contains(t);
  }));
}

inline bool template_admissible(std::span<const UniversalTag> tags, std::size_t min_words) {
  const auto has = [&](UniversalTag t) { return std::find(tags.begin(), tags.end(), t) != tags.end(); };
  return has(UniversalTag::kVerb) && !has(UniversalTag::kNum) && !has(UniversalTag::kOther) &&
         guaranteed_words(tags) >= min_words;
}

class TemplateStore {
 public:
  TemplateStore() = default;
  explicit TemplateStore(std::vector<SentenceTemplate> templates) : templates_(std::move(templates)) {
    if (templates_.empty()) return;
    std::vector<double> w;
    for (const auto& t : templates_) w.push_back(static_cast<double>(t.frequency));
    weights_ = std::discrete_distribution<std::size_t>::param_type(w.begin(), w.end());
  }

  const std::vector<SentenceTemplate>& templates() const noexcept { return templates_; }
  std::size_t size() const noexcept { return templates_.size(); }
  bool empty() const noexcept { return templates_.empty(); }

  /// Draws a template with probability proportional to its corpus frequency.
  const SentenceTemplate& sample(Rng& rng) const {
    if (templates_.empty()) throw DataError("template store is empty");
    std::discrete_distribution<std::size_t> pick(weights_);
    return templates_[pick(rng)];
  }

 private:
  std::vector<SentenceTemplate> templates_;
  std::discrete_distribution<std::size_t>::param_type weights_;
};

/// Counts whole-sentence tag sequences, drops inadmissible ones, and keeps the
/// `top_k` most frequent (count desc, then shorter, then lexicographic).
/// The store may come out empty; only the sentence encoder needs it.
inline TemplateStore extract_templates(const std::vector<TaggedSentence>& sentences,
                                       std::size_t top_k = 100, std::size_t min_words = 5) {
  std::map<std::vector<UniversalTag>, std::uint64_t> counts;
  for (const auto& s : sentences) {
    std::vector<UniversalTag> tags;
    tags.reserve(s.tokens.size());
    for (const auto& t : s.tokens) tags.push_back(t.tag);
    ++counts[std::move(tags)];
  }
  std::vector<SentenceTemplate> kept;
  for (auto& [tags, n] : counts) {
    if (template_admissible(tags, min_words)) kept.push_back({tags, n});
  }
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    if (a.frequency != b.frequency) return a.frequency > b.frequency;
    if (a.tags.size() != b.tags.size()) return a.tags.size() < b.tags.size();
    return a.tags < b.tags;
  });
  if (kept.size() > top_k) kept.resize(top_k);
  return TemplateStore(std::move(kept));
}

/// Everything trained from the tagged corpus.
struct LanguageModel {
  Vocabulary vocab;
  NgramModel words;
  PosModel tags;
  TemplateStore templates;

  /// Word-model score of `w` after the given context words.
  double score(std::span<const TokenId> context, TokenId w) const { return words.score(context, w); }
  /// Bigram view of the word model.
  double bigram(TokenId prev, TokenId w) const { return words.score(std::span(&prev, 1), w); }
};

struct ModelOptions {
  std::size_t order = 3;
  double alpha = 0.1;
  std::size_t top_templates = 100;
  std::size_t min_template_words = 5;
};

inline LanguageModel train_language_model(const std::vector<TaggedSentence>& sentences,
                                          const ModelOptions& opt = {}) {
  LanguageModel lm{Vocabulary{}, NgramModel(opt.order, opt.alpha), PosModel(opt.order, opt.alpha), {}};
  std::vector<TokenId> ids;
  std::vector<UniversalTag> tags;
  for (const auto& s : sentences) {
    ids.clear();
    tags.clear();
    for (const auto& t : s.tokens) {
      ids.push_back(lm.vocab.add(t.word));
      tags.push_back(t.tag);
    }
    lm.words.add_sentence(ids);
    lm.tags.add_sentence(tags);
  }
  lm.templates = extract_templates(sentences, opt.top_templates, opt.min_template_words);
  return lm;
}

inline constexpr std::string_view kModelCacheMagic = "majorsys-model";
inline constexpr int kModelCacheVersion = 1;

/// Versioned text cache. `key` identifies the inputs the model was built from.
inline void write_language_model(std::ostream& out, const LanguageModel& lm, std::string_view key) {
  out << kModelCacheMagic << ' ' << kModelCacheVersion << ' ' << key << '\n';
  out << "vocab " << lm.vocab.size() << '\n';
  for (TokenId i = 0; i < lm.vocab.size(); ++i) out << lm.vocab.name(i) << '\n';
  lm.words.write(out);
  lm.tags.ngrams().write(out);
  out << "templates " << lm.templates.size() << '\n';
  for (const auto& t : lm.templates.templates()) {
    out << t.frequency;
    for (auto tag : t.tags) out << ' ' << tag_name(tag);
    out << '\n';
  }
}

/// Returns the cache key stored in a model cache header, or nullopt.
inline std::optional<std::string> read_model_key(std::istream& in) {
  std::string line, magic, key;
  int version = 0;
  if (!std::getline(in, line)) return std::nullopt;
  std::istringstream header(line);
  if (!(header >> magic >> version >> key) || magic != kModelCacheMagic || version != kModelCacheVersion) {
    return std::nullopt;
  }
  return key;
}

inline LanguageModel read_language_model(std::istream& in, double alpha) {
  if (!read_model_key(in)) throw DataError("not a model cache (or unsupported version)");
  std::string line, tag;
  std::size_t n = 0;
  if (!std::getline(in, line) || !(std::istringstream(line) >> tag >> n) || tag != "vocab") {
    throw DataError("model cache: missing vocab block");
  }
  LanguageModel lm;
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::getline(in, line)) throw DataError("model cache: truncated vocab");
    if (i >= 3 && lm.vocab.add(line) != i) throw DataError("model cache: duplicate vocab entry " + line);
  }
  lm.words = NgramModel::read(in, alpha);
  lm.tags = PosModel(NgramModel::read(in, alpha));
  if (!std::getline(in, line) || !(std::istringstream(line) >> tag >> n) || tag != "templates") {
    throw DataError("model cache: missing template block");
  }
  std::vector<SentenceTemplate> templates;
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::getline(in, line)) throw DataError("model cache: truncated templates");
    std::istringstream fields(line);
    SentenceTemplate t;
    std::string name;
    fields >> t.frequency;
    while (fields >> name) {
      auto parsed = parse_tag(name);
      if (!parsed) throw DataError("model cache: bad tag " + name);
      t.tags.push_back(*parsed);
    }
    templates.push_back(std::move(t));
  }
  lm.templates = TemplateStore(std::move(templates));
  return lm;
}

}  // namespace majorsys
