#pragma once

// Machine-readable encoding records (JSON Lines).
//
//   {"type":"encoding","source":"86101521","encoder":"sentence"}
//   {"type":"word","sentence":0,"closed":true,"word":"officiate","span":"861","slot":"VERB"}
//   ...
//
// One header record, then one record per word in order.

#include <istream>
#include <ostream>
#include <string>

#include <json.hpp>

#include "majorsys/encoding.hpp"
#include "majorsys/error.hpp"

namespace majorsys {

inline void write_records(std::ostream& out, const Encoding& enc, std::string_view encoder = {}) {
  nlohmann::json head = {{"type", "encoding"}, {"source", enc.source.str()}};
  if (!encoder.empty()) head["encoder"] = std::string(encoder);
  out << head.dump() << '\n';
  for (std::size_t s = 0; s < enc.sentences.size(); ++s) {
    const auto& sentence = enc.sentences[s];
    for (const auto& w : sentence.words) {
      nlohmann::json rec = {{"type", "word"},       {"sentence", s},         {"closed", sentence.closed},
                            {"word", w.word},       {"span", w.span.str()}};
      rec["slot"] = w.slot ? nlohmann::json(std::string(tag_name(*w.slot))) : nlohmann::json(nullptr);
      out << rec.dump() << '\n';
    }
  }
}

/// Parses the records of a single encoding.
inline Encoding read_records(std::istream& in) {
  Encoding enc;
  std::string line;
  bool have_header = false;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("<records>", lineno, e.what());
    }
    const auto type = rec.value("type", "");
    if (type == "encoding") {
      if (have_header) throw ParseError("<records>", lineno, "second encoding header");
      auto src = DigitString::parse(rec.value("source", ""));
      if (!src) throw ParseError("<records>", lineno, "bad source digits");
      enc.source = *src;
      have_header = true;
    } else if (type == "word") {
      if (!have_header) throw ParseError("<records>", lineno, "word record before header");
      const auto s = rec.at("sentence").get<std::size_t>();
      if (s + 1 < enc.sentences.size() || s > enc.sentences.size()) {
        throw ParseError("<records>", lineno, "sentence index out of order");
      }
      if (s == enc.sentences.size()) enc.sentences.emplace_back();
      auto& sentence = enc.sentences.back();
      sentence.closed = rec.at("closed").get<bool>();
      EncodedWord w;
      w.word = rec.at("word").get<std::string>();
      auto span = DigitString::parse(rec.at("span").get<std::string>());
      if (!span) throw ParseError("<records>", lineno, "bad span digits");
      w.span = *span;
      if (!rec.at("slot").is_null()) {
        auto tag = parse_tag(rec.at("slot").get<std::string>());
        if (!tag) throw ParseError("<records>", lineno, "bad slot tag");
        w.slot = *tag;
      }
      sentence.words.push_back(std::move(w));
    } else {
      throw ParseError("<records>", lineno, "unknown record type '" + type + "'");
    }
  }
  if (!have_header) throw DataError("no encoding header record");
  return enc;
}

}  // namespace majorsys
