#pragma once

#include <array>
#include <bitset>
#include <cctype>
#include <cstdint>
#include <initializer_list>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>

#include "majorsys/error.hpp"

namespace majorsys {

/// The 12-tag universal POS inventory. Enumerators are declared in the
/// lexicographic order of their names so that `<` doubles as the tie-break order.
enum class UniversalTag : std::uint8_t {
  kPunct,  // "."
  kAdj,
  kAdp,
  kAdv,
  kConj,
  kDet,
  kNoun,
  kNum,
  kPron,
  kPrt,
  kVerb,
  kOther,  // "X"
};

inline constexpr std::size_t kNumTags = 12;

inline constexpr std::array<std::string_view, kNumTags> kTagNames = {
    ".", "ADJ", "ADP", "ADV", "CONJ", "DET", "NOUN", "NUM", "PRON", "PRT", "VERB", "X"};

inline constexpr std::array<UniversalTag, kNumTags> kAllTags = {
    UniversalTag::kPunct, UniversalTag::kAdj,  UniversalTag::kAdp,  UniversalTag::kAdv,
    UniversalTag::kConj,  UniversalTag::kDet,  UniversalTag::kNoun, UniversalTag::kNum,
    UniversalTag::kPron,  UniversalTag::kPrt,  UniversalTag::kVerb, UniversalTag::kOther};

constexpr std::size_t tag_index(UniversalTag t) noexcept { return static_cast<std::size_t>(t); }

constexpr std::string_view tag_name(UniversalTag t) noexcept { return kTagNames[tag_index(t)]; }

inline std::optional<UniversalTag> parse_tag(std::string_view name) noexcept {
  for (std::size_t i = 0; i < kNumTags; ++i) {
    if (kTagNames[i] == name) return kAllTags[i];
  }
  return std::nullopt;
}

/// Small set of universal tags.
class TagSet {
 public:
  TagSet() = default;
  TagSet(std::initializer_list<UniversalTag> tags) {
    for (auto t : tags) insert(t);
  }

  void insert(UniversalTag t) { bits_.set(tag_index(t)); }
  bool contains(UniversalTag t) const { return bits_.test(tag_index(t)); }
  bool empty() const { return bits_.none(); }
  std::size_t size() const { return bits_.count(); }

  friend bool operator==(const TagSet&, const TagSet&) = default;

 private:
  std::bitset<kNumTags> bits_;
};

/// Brown tag -> universal tag table, read from a two-column text file.
/// Lines starting with '#' and blank lines are ignored.
class TagMap {
 public:
  TagMap() = default;

  static TagMap parse(std::istream& in, const std::string& source = "<tagmap>") {
    TagMap map;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty() || line[0] == '#') continue;
      std::istringstream fields(line);
      std::string brown, universal, extra;
      if (!(fields >> brown)) continue;
      if (!(fields >> universal) || (fields >> extra)) {
        throw ParseError(source, lineno, "expected two columns: brown_tag universal_tag");
      }
      auto tag = parse_tag(universal);
      if (!tag) throw ParseError(source, lineno, "unknown universal tag '" + universal + "'");
      for (auto& c : brown) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      if (!map.table_.emplace(brown, *tag).second) {
        throw ParseError(source, lineno, "duplicate entry for '" + brown + "'");
      }
    }
    return map;
  }

  void add(std::string brown, UniversalTag tag) { table_[std::move(brown)] = tag; }
  std::size_t size() const { return table_.size(); }

  /// Maps a (possibly compound) Brown tag. The whole tag is tried first so
  /// that punctuation tags such as "--" resolve; otherwise the segment before
  /// the first '+' or '-' is used. Unmappable tags become X.
  UniversalTag map(std::string_view brown) const {
    std::string key(brown);
    for (auto& c : key) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (auto it = table_.find(key); it != table_.end()) return it->second;
    const auto cut = key.find_first_of("+-", 1);
    if (cut != std::string::npos) {
      if (auto it = table_.find(key.substr(0, cut)); it != table_.end()) return it->second;
    }
    return UniversalTag::kOther;
  }

 private:
  std::unordered_map<std::string, UniversalTag> table_;
};

}  // namespace majorsys
