#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "majorsys/corpus.hpp"
#include "majorsys/error.hpp"
#include "majorsys/phonetics.hpp"
#include "majorsys/tags.hpp"

namespace majorsys {

using WordId = std::uint32_t;

/// A word stored in the index. `token` is an opaque id assigned by the
/// caller at build time (the language-model vocabulary id).
struct IndexedWord {
  std::string word;
  DigitString digits;
  UniversalTag pos;
  std::uint64_t frequency;
  std::uint32_t token;
};

struct Candidate {
  WordId id;
  std::size_t digits_consumed;
  friend bool operator==(const Candidate&, const Candidate&) = default;
};

/// Digit trie over canonical digit strings. Each word sits at exactly the
/// node spelled by its digits; zero-digit words are left out.
class EncodingIndex {
 public:
  using TokenFn = std::function<std::uint32_t(std::string_view)>;

  EncodingIndex() : nodes_(1) {}

  explicit EncodingIndex(const Lexicon& lex, const TokenFn& token_of = {}) : nodes_(1) {
    for (const auto& e : lex.entries()) {
      if (e.canonical_digits.empty()) continue;
      const auto id = static_cast<WordId>(words_.size());
      words_.push_back({e.word, e.canonical_digits, e.dominant_pos, e.frequency,
                        token_of ? token_of(e.word) : 0u});
      std::size_t node = 0;
      for (std::size_t i = 0; i < e.canonical_digits.size(); ++i) {
        auto& child = nodes_[node].child[e.canonical_digits[i]];
        if (child < 0) {
          child = static_cast<std::int32_t>(nodes_.size());
          nodes_.emplace_back();
        }
        node = static_cast<std::size_t>(nodes_[node].child[e.canonical_digits[i]]);
      }
      nodes_[node].words.push_back(id);
      nodes_[node].by_pos[tag_index(e.dominant_pos)].push_back(id);
      max_word_digits_ = std::max(max_word_digits_, e.canonical_digits.size());
    }
  }

  const IndexedWord& word(WordId id) const { return words_[id]; }
  std::size_t size() const noexcept { return words_.size(); }
  std::size_t max_word_digits() const noexcept { return max_word_digits_; }

  std::optional<WordId> find(std::string_view w) const {
    // words_ inherits the lexicon's alphabetical order.
    auto it = std::lower_bound(words_.begin(), words_.end(), w,
                               [](const IndexedWord& a, std::string_view b) { return a.word < b; });
    if (it == words_.end() || it->word != w) return std::nullopt;
    return static_cast<WordId>(it - words_.begin());
  }

  /// Words whose digits are a nonempty prefix of `remaining`, shortest first,
  /// optionally restricted to the given dominant POS tags.
  std::vector<Candidate> prefix_candidates(const DigitString& remaining,
                                           const std::optional<TagSet>& filter = {}) const {
    std::vector<Candidate> out;
    walk(remaining, [&](const Node& n, std::size_t depth) {
      if (!filter) {
        for (auto id : n.words) out.push_back({id, depth});
      } else {
        for (auto t : kAllTags) {
          if (!filter->contains(t)) continue;
          for (auto id : n.by_pos[tag_index(t)]) out.push_back({id, depth});
        }
      }
    });
    return out;
  }

  /// Longest encodable prefix of `remaining` and all words of exactly that
  /// length. Throws UnencodableError if not even the first digit is covered.
  std::pair<std::size_t, std::vector<WordId>> max_prefix_candidates(const DigitString& remaining) const {
    std::size_t best = 0;
    const Node* best_node = nullptr;
    walk(remaining, [&](const Node& n, std::size_t depth) {
      if (!n.words.empty()) {
        best = depth;
        best_node = &n;
      }
    });
    if (!best_node) {
      throw UnencodableError("no word encodes the digit sequence starting at '" +
                             remaining.substr(0, 1).str() + "'");
    }
    return {best, best_node->words};
  }

  std::vector<WordId> exact_candidates(const DigitString& digits) const {
    std::size_t node = 0;
    for (std::size_t i = 0; i < digits.size(); ++i) {
      const auto next = nodes_[node].child[digits[i]];
      if (next < 0) return {};
      node = static_cast<std::size_t>(next);
    }
    return digits.empty() ? std::vector<WordId>{} : nodes_[node].words;
  }

  /// exact_candidates restricted to the given tags.
  std::vector<WordId> exact_candidates(const DigitString& digits, const TagSet& filter) const {
    auto all = exact_candidates(digits);
    std::erase_if(all, [&](WordId id) { return !filter.contains(words_[id].pos); });
    return all;
  }

 private:
  struct Node {
    Node() { child.fill(-1); }
    std::array<std::int32_t, 10> child;
    std::vector<WordId> words;
    std::array<std::vector<WordId>, kNumTags> by_pos;
  };

  template <typename Visit>
  void walk(const DigitString& remaining, Visit&& visit) const {
    const auto limit = std::min(remaining.size(), max_word_digits_);
    std::size_t node = 0;
    for (std::size_t depth = 1; depth <= limit; ++depth) {
      const auto next = nodes_[node].child[remaining[depth - 1]];
      if (next < 0) return;
      node = static_cast<std::size_t>(next);
      visit(nodes_[node], depth);
    }
  }

  std::vector<IndexedWord> words_;
  std::vector<Node> nodes_;
  std::size_t max_word_digits_ = 0;
};

}  // namespace majorsys
