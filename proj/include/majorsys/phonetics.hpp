#pragma once

// Major-system phonetics: Arpabet phonemes, the digit mapping, and
// conversion of pronunciations to digit strings.

#include <algorithm>
#include <array>
#include <cctype>
#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "majorsys/error.hpp"

namespace majorsys {

/// An ordered sequence of decimal digits. May be empty.
class DigitString {
 public:
  DigitString() = default;

  /// Returns nullopt if `text` contains anything other than '0'-'9'.
  static std::optional<DigitString> parse(std::string_view text) {
    if (!std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      return std::nullopt;
    }
    DigitString d;
    d.digits_.assign(text);
    return d;
  }

  /// Throws std::invalid_argument on non-digit characters.
  static DigitString from(std::string_view text) {
    auto d = parse(text);
    if (!d) throw std::invalid_argument("not a digit string: '" + std::string(text) + "'");
    return *std::move(d);
  }

  std::size_t size() const noexcept { return digits_.size(); }
  bool empty() const noexcept { return digits_.empty(); }
  const std::string& str() const noexcept { return digits_; }
  std::string_view view() const noexcept { return digits_; }

  /// Digit value at position i.
  int operator[](std::size_t i) const { return digits_[i] - '0'; }

  DigitString substr(std::size_t pos, std::size_t len = std::string::npos) const {
    DigitString d;
    d.digits_ = digits_.substr(pos, len);
    return d;
  }

  bool starts_with(const DigitString& prefix) const noexcept {
    return view().starts_with(prefix.view());
  }

  void push_back(int digit) { digits_.push_back(static_cast<char>('0' + digit)); }
  DigitString& operator+=(const DigitString& other) {
    digits_ += other.digits_;
    return *this;
  }
  friend DigitString operator+(DigitString a, const DigitString& b) { return a += b; }

  friend bool operator==(const DigitString&, const DigitString&) = default;
  friend auto operator<=>(const DigitString&, const DigitString&) = default;
  friend std::ostream& operator<<(std::ostream& os, const DigitString& d) { return os << d.digits_; }

 private:
  std::string digits_;
};

/// All 39 phonemes of the CMU dictionary phone set (stress-free).
inline constexpr std::array<std::string_view, 39> kArpabet = {
    "AA", "AE", "AH", "AO", "AW", "AY", "B",  "CH", "D",  "DH", "EH", "ER", "EY",
    "F",  "G",  "HH", "IH", "IY", "JH", "K",  "L",  "M",  "N",  "NG", "OW", "OY",
    "P",  "R",  "S",  "SH", "T",  "TH", "UH", "UW", "V",  "W",  "Y",  "Z",  "ZH"};

namespace detail {

struct MajorRow {
  std::string_view symbol;
  std::int8_t digit;  // -1: encodes nothing
};

// Consonant rows of the major system; every other Arpabet symbol (vowels, ER, NG,
// W, Y, HH) encodes nothing.
inline constexpr std::array<MajorRow, 24> kMajorRows = {{
    {"S", 0},  {"Z", 0},                                //
    {"T", 1},  {"D", 1},  {"TH", 1}, {"DH", 1},         //
    {"N", 2},                                           //
    {"M", 3},                                           //
    {"R", 4},                                           //
    {"L", 5},                                           //
    {"CH", 6}, {"JH", 6}, {"SH", 6}, {"ZH", 6},         //
    {"K", 7},  {"G", 7},                                //
    {"F", 8},  {"V", 8},                                //
    {"P", 9},  {"B", 9},                                //
    {"NG", -1}, {"W", -1}, {"Y", -1}, {"HH", -1},
}};

constexpr std::array<std::int8_t, kArpabet.size()> make_digit_table() {
  std::array<std::int8_t, kArpabet.size()> table{};
  for (std::size_t i = 0; i < kArpabet.size(); ++i) {
    table[i] = -1;
    for (const auto& row : kMajorRows) {
      if (row.symbol == kArpabet[i]) table[i] = row.digit;
    }
  }
  return table;
}

inline constexpr auto kDigitTable = make_digit_table();

}  // namespace detail

/// An Arpabet phoneme with stress markers removed.
class Phoneme {
 public:
  enum class Kind { kEncodingConsonant, kNonEncoding };

  /// Validates `symbol` against the Arpabet set; throws UnknownSymbolError.
  explicit Phoneme(std::string_view symbol) {
    auto it = std::find(kArpabet.begin(), kArpabet.end(), symbol);
    if (it == kArpabet.end()) throw UnknownSymbolError(std::string(symbol));
    index_ = static_cast<std::uint8_t>(it - kArpabet.begin());
  }

  std::string_view symbol() const noexcept { return kArpabet[index_]; }

  std::optional<int> digit() const noexcept {
    const int d = detail::kDigitTable[index_];
    return d < 0 ? std::nullopt : std::optional<int>(d);
  }

  Kind kind() const noexcept { return digit() ? Kind::kEncodingConsonant : Kind::kNonEncoding; }

  friend bool operator==(const Phoneme&, const Phoneme&) = default;
  friend std::ostream& operator<<(std::ostream& os, const Phoneme& p) { return os << p.symbol(); }

 private:
  std::uint8_t index_ = 0;
};

using Pronunciation = std::vector<Phoneme>;

/// Removes a trailing 0/1/2 stress marker and uppercases; validates the result.
inline Phoneme strip_stress(std::string_view raw) {
  std::string s(raw);
  if (!s.empty() && s.back() >= '0' && s.back() <= '2') s.pop_back();
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return Phoneme(s);
}

inline std::optional<int> phoneme_to_digit(const Phoneme& p) noexcept { return p.digit(); }

/// Throws UnknownSymbolError when given a symbol outside the Arpabet set.
inline std::optional<int> phoneme_to_digit(std::string_view symbol) {
  return Phoneme(symbol).digit();
}

inline DigitString pronunciation_to_digits(std::span<const Phoneme> phonemes) {
  DigitString out;
  for (const auto& p : phonemes) {
    if (auto d = p.digit()) out.push_back(*d);
  }
  return out;
}

}  // namespace majorsys
