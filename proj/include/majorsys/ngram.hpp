#pragma once

// Token n-gram counts scored with Stupid Backoff.

#include <algorithm>
#include <array>
#include <cstdint>
#include <istream>
#include <limits>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "majorsys/error.hpp"

namespace majorsys {

using TokenId = std::uint32_t;

inline constexpr TokenId kBos = 0;      // sentence-start padding
inline constexpr TokenId kEos = 1;      // sentence end
inline constexpr TokenId kUnknown = 2;  // never counted
inline constexpr std::size_t kMaxOrder = 5;

/// Bidirectional string <-> id table with the three reserved ids above.
class Vocabulary {
 public:
  Vocabulary() : names_{"<s>", "</s>", "<unk>"} {
    for (TokenId i = 0; i < names_.size(); ++i) ids_.emplace(names_[i], i);
  }

  TokenId add(std::string_view name) {
    auto [it, inserted] = ids_.try_emplace(std::string(name), static_cast<TokenId>(names_.size()));
    if (inserted) names_.emplace_back(name);
    return it->second;
  }

  TokenId id(std::string_view name) const {
    auto it = ids_.find(std::string(name));
    return it == ids_.end() ? kUnknown : it->second;
  }

  const std::string& name(TokenId id) const { return names_.at(id); }
  std::size_t size() const noexcept { return names_.size(); }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, TokenId> ids_;
};

/// Counts of all k-grams (1 <= k <= order) with Stupid Backoff scoring:
///
///   S(w | h) = c(h w) / c(h)        if c(h w) > 0
///            = alpha * S(w | h')    otherwise, h' = h without its first token
///   S(w)     = c(w) / total_tokens
///
/// Scores are not normalised.
class NgramModel {
 public:
  explicit NgramModel(std::size_t order = 3, double alpha = 0.1) : order_(order), alpha_(alpha) {
    if (order < 1 || order > kMaxOrder) throw std::invalid_argument("n-gram order must be in [1, 5]");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("backoff alpha must be in (0, 1]");
  }

  std::size_t order() const noexcept { return order_; }
  double alpha() const noexcept { return alpha_; }
  void set_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("backoff alpha must be in (0, 1]");
    alpha_ = alpha;
  }
  std::uint64_t total_tokens() const noexcept { return total_; }
  std::size_t distinct_ngrams() const noexcept { return counts_.size(); }

  /// Counts every k-gram of `tokens` as-is. Each non-<s> token adds to the
  /// unigram denominator.
  void add_sequence(std::span<const TokenId> tokens) {
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (tokens[i] != kBos) ++total_;
      const std::size_t kmax = std::min(order_, i + 1);
      for (std::size_t k = 1; k <= kmax; ++k) ++counts_[Key(tokens.subspan(i + 1 - k, k))];
    }
  }

  /// Pads with order-1 <s> tokens and a trailing </s>, then counts.
  void add_sentence(std::span<const TokenId> tokens) {
    std::vector<TokenId> padded(order_ > 1 ? order_ - 1 : 0, kBos);
    padded.insert(padded.end(), tokens.begin(), tokens.end());
    padded.push_back(kEos);
    add_sequence(padded);
  }

  std::uint64_t count(std::span<const TokenId> ngram) const {
    if (ngram.empty() || ngram.size() > kMaxOrder) return 0;
    auto it = counts_.find(Key(ngram));
    return it == counts_.end() ? 0 : it->second;
  }

  /// Stupid Backoff score of `w` after `context`; only the last order-1
  /// context tokens are used.
  double score(std::span<const TokenId> context, TokenId w) const {
    if (order_ > 1 && context.size() > order_ - 1) context = context.last(order_ - 1);
    if (order_ == 1) context = {};
    std::array<TokenId, kMaxOrder> buf{};
    double factor = 1.0;
    for (std::size_t k = context.size(); k > 0; --k) {
      auto h = context.last(k);
      std::copy(h.begin(), h.end(), buf.begin());
      buf[k] = w;
      const auto joint = count(std::span<const TokenId>(buf.data(), k + 1));
      if (joint > 0) return factor * static_cast<double>(joint) / static_cast<double>(count(h));
      factor *= alpha_;
    }
    if (total_ == 0) return 0.0;
    return factor * static_cast<double>(count(std::span<const TokenId>(&w, 1))) /
           static_cast<double>(total_);
  }

  /// Sorted dump for deterministic serialization.
  void write(std::ostream& out) const {
    std::vector<std::pair<Key, std::uint32_t>> rows(counts_.begin(), counts_.end());
    std::sort(rows.begin(), rows.end(),
              [](const auto& a, const auto& b) { return a.first.ids < b.first.ids; });
    out << "ngram " << order_ << ' ' << total_ << ' ' << rows.size() << '\n';
    for (const auto& [key, c] : rows) {
      for (std::size_t i = 0; i < kMaxOrder && key.ids[i] != kEmpty; ++i) out << key.ids[i] << ' ';
      out << c << '\n';
    }
  }

  /// Reads a block produced by write(); alpha is not stored.
  static NgramModel read(std::istream& in, double alpha) {
    std::string line, tag;
    std::size_t order = 0, rows = 0;
    std::uint64_t total = 0;
    if (!std::getline(in, line) || !(std::istringstream(line) >> tag >> order >> total >> rows) ||
        tag != "ngram") {
      throw DataError("malformed n-gram block header");
    }
    NgramModel m(order, alpha);
    m.total_ = total;
    m.counts_.reserve(rows);
    std::vector<TokenId> ids;
    for (std::size_t r = 0; r < rows; ++r) {
      if (!std::getline(in, line)) throw DataError("truncated n-gram block");
      std::istringstream fields(line);
      ids.clear();
      std::uint64_t v;
      while (fields >> v) ids.push_back(static_cast<TokenId>(v));
      if (ids.size() < 2 || ids.size() - 1 > order) throw DataError("malformed n-gram row: " + line);
      const auto c = ids.back();
      ids.pop_back();
      m.counts_[Key(ids)] = c;
    }
    return m;
  }

 private:
  static constexpr TokenId kEmpty = std::numeric_limits<TokenId>::max();

  struct Key {
    explicit Key(std::span<const TokenId> ngram) {
      ids.fill(kEmpty);
      std::copy(ngram.begin(), ngram.end(), ids.begin());
    }
    std::array<TokenId, kMaxOrder> ids;
    friend bool operator==(const Key&, const Key&) = default;
  };

  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      std::uint64_t h = 1469598103934665603ull;
      for (auto id : k.ids) {
        h ^= id;
        h *= 1099511628211ull;
      }
      return static_cast<std::size_t>(h ^ (h >> 29));
    }
  };

  std::size_t order_;
  double alpha_;
  std::uint64_t total_ = 0;
  std::unordered_map<Key, std::uint32_t, KeyHash> counts_;
};

}  // namespace majorsys
