// majorsys: encode digit strings as memorable major-system word sequences.

#include <cstdlib>
#include <future>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "majorsys/majorsys.hpp"

#ifndef MAJORSYS_DEFAULT_DATA_DIR
#define MAJORSYS_DEFAULT_DATA_DIR "data"
#endif

namespace {

using namespace majorsys;

struct Options {
  std::string data_dir;
  std::string cmudict, corpus, tagmap, cache;
  std::string encoder = "sentence";
  std::size_t n = 3;
  double alpha = 0.1;
  double power = 10.0;
  std::size_t chunk_size = 3;
  std::string mode = "argmax";
  std::optional<std::uint64_t> seed;
  std::string format = "plain";
  bool no_cache = false;
};

DataPaths paths_from(const Options& o) {
  const std::filesystem::path base = o.data_dir;
  DataPaths p;
  p.cmudict = o.cmudict.empty() ? base / "cmudict.dict" : std::filesystem::path(o.cmudict);
  p.corpus = o.corpus.empty() ? base / "brown" : std::filesystem::path(o.corpus);
  p.tagmap = o.tagmap.empty() ? base / "brown-universal.map" : std::filesystem::path(o.tagmap);
  if (!o.no_cache) p.cache_dir = o.cache.empty() ? base / "cache" : std::filesystem::path(o.cache);
  return p;
}

ModelOptions model_options(const Options& o) {
  ModelOptions m;
  m.order = o.n;
  m.alpha = o.alpha;
  return m;
}

EncoderConfig encoder_config(const Options& o, std::uint64_t seed) {
  EncoderConfig c;
  auto kind = parse_encoder(o.encoder);
  if (!kind) throw UsageError("unknown encoder '" + o.encoder + "'");
  c.kind = *kind;
  c.n = o.n;
  c.alpha = o.alpha;
  c.weight_power = o.power;
  c.chunk_size = o.chunk_size;
  c.seed = seed;
  if (o.mode == "argmax") {
    c.ngram_mode = NgramMode::kArgmax;
  } else if (o.mode == "sample") {
    c.ngram_mode = NgramMode::kSample;
  } else {
    throw UsageError("--mode must be argmax or sample");
  }
  if (!(o.alpha > 0.0 && o.alpha <= 1.0)) throw UsageError("--alpha must be in (0, 1]");
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return c;
}

std::uint64_t resolve_seed(const Options& o) {
  if (o.seed) return *o.seed;
  const std::uint64_t seed = std::random_device{}();
  std::cerr << "seed: " << seed << '\n';
  return seed;
}

DigitString parse_digits(const std::string& text) {
  auto d = DigitString::parse(text);
  if (!d || d->empty()) throw UsageError("expected a nonempty decimal digit string, got '" + text + "'");
  return *d;
}

void print_report(std::ostream& out, const BuildReport& r) {
  out << "sentences        " << r.corpus.sentences << '\n'
      << "tokens           " << r.corpus.tokens << '\n'
      << "types (raw)      " << r.corpus.raw_types << '\n'
      << "types (lower)    " << r.corpus.types << '\n';
  if (r.dictionary_words) out << "dictionary words " << r.dictionary_words << '\n';
  out << "lexicon words    " << r.lexicon_words << '\n'
      << "indexed words    " << r.indexed_words << '\n'
      << "templates        " << r.templates << '\n'
      << "cache key        " << r.cache_key << (r.from_cache ? " (cached)" : "") << '\n';
}

std::string slot_label(const EncodedWord& w) {
  return w.slot ? std::string(tag_name(*w.slot)) : std::string("-");
}

int cmd_build(const Options& o) {
  const auto paths = paths_from(o);
  auto r = build_resources(paths, model_options(o));
  r.report.cache_key = cache_key(paths, model_options(o));
  if (paths.cache_dir) {
    write_cache(*paths.cache_dir, r, r.report.cache_key);
    std::cout << "wrote cache to " << paths.cache_dir->string() << '\n';
  }
  print_report(std::cout, r.report);
  return 0;
}

int cmd_stats(const Options& o) {
  const auto r = load_resources(paths_from(o), model_options(o), &std::cerr);
  print_report(std::cout, r.report);
  return 0;
}

int cmd_encode(const Options& o, const std::string& digits_text) {
  const auto digits = parse_digits(digits_text);
  const auto config = encoder_config(o, resolve_seed(o));
  const auto r = load_resources(paths_from(o), model_options(o), &std::cerr);
  const auto enc = encode(digits, r.view(), config);
  const auto check = check_roundtrip(enc, r.lexicon);
  const auto m = compute_metrics(enc, r.lexicon, r.lm);

  if (o.format == "jsonl") {
    write_records(std::cout, enc, encoder_name(config.kind));
  } else if (o.format == "table") {
    std::cout << std::left << std::setw(20) << "word" << std::setw(12) << "span" << "slot\n";
    for (const auto& s : enc.sentences) {
      for (const auto& w : s.words) {
        std::cout << std::setw(20) << w.word << std::setw(12) << w.span.str() << slot_label(w) << '\n';
      }
    }
  } else {
    std::cout << enc.text() << '\n';
    for (const auto& s : enc.sentences) {
      for (const auto& w : s.words) std::cout << "  " << w.word << " = " << w.span << '\n';
    }
  }
  if (o.format != "jsonl") {
    std::cout << "words " << m.word_count << ", sentences " << m.sentence_count << ", digits/word "
              << std::fixed << std::setprecision(2) << m.digits_per_word << ", mean frequency "
              << m.mean_word_frequency << ", log score " << m.model_score << '\n'
              << "round-trip: " << (check.ok ? "OK" : "FAILED: " + check.message) << '\n';
  } else if (!check.ok) {
    std::cerr << "round-trip FAILED: " << check.message << '\n';
  }
  return check.ok ? 0 : static_cast<int>(ExitCode::kUnencodable);
}

int cmd_decode(const Options& o, const std::vector<std::string>& words) {
  if (words.empty()) throw UsageError("decode needs at least one word");
  // Lexicon only; skip the model cache load when a lexicon cache exists.
  const auto paths = paths_from(o);
  std::string text;
  for (const auto& w : words) text += w + ' ';
  Lexicon lex;
  if (paths.cache_dir && cached_key(*paths.cache_dir) == cache_key(paths, model_options(o))) {
    std::ifstream in(lexicon_cache_path(*paths.cache_dir));
    lex = read_lexicon(in);
  } else {
    lex = load_resources(paths, model_options(o), &std::cerr).lexicon;
  }
  const auto result = decode_text(text, lex);
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
  std::cout << result.digits << '\n';
  return 0;
}

int cmd_compare(const Options& o, const std::string& digits_text) {
  const auto digits = parse_digits(digits_text);
  const auto seed = resolve_seed(o);
  const auto base = encoder_config(o, seed);
  const auto r = load_resources(paths_from(o), model_options(o), &std::cerr);

  struct Row {
    EncoderKind kind;
    Encoding enc;
    Metrics metrics;
    RoundTripReport check;
    std::string error;
  };
  std::vector<std::future<Row>> jobs;
  for (auto kind : kAllEncoders) {
    jobs.push_back(std::async(std::launch::async, [&, kind] {
      Row row{kind, {}, {}, {}, {}};
      auto config = base;
      config.kind = kind;
      try {
        row.enc = encode(digits, r.view(), config);
        row.check = check_roundtrip(row.enc, r.lexicon);
        row.metrics = compute_metrics(row.enc, r.lexicon, r.lm);
      } catch (const UnencodableError& e) {
        row.error = e.what();
        row.check.ok = false;
      }
      return row;
    }));
  }
  bool all_ok = true;
  if (o.format != "jsonl") {
    std::cout << std::left << std::setw(10) << "encoder" << std::setw(7) << "words" << std::setw(8)
              << "d/word" << std::setw(12) << "round-trip" << "phrase\n";
  }
  for (auto& job : jobs) {
    const auto row = job.get();
    all_ok = all_ok && row.check.ok;
    if (o.format == "jsonl") {
      if (row.error.empty()) write_records(std::cout, row.enc, encoder_name(row.kind));
      continue;
    }
    std::cout << std::left << std::setw(10) << encoder_name(row.kind) << std::setw(7)
              << row.metrics.word_count << std::setw(8) << std::fixed << std::setprecision(2)
              << row.metrics.digits_per_word << std::setw(12) << (row.check.ok ? "OK" : "FAILED")
              << (row.error.empty() ? row.enc.text() : "error: " + row.error) << '\n';
  }
  return all_ok ? 0 : static_cast<int>(ExitCode::kUnencodable);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Major-system mnemonic encoder"};
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  const char* env_data = std::getenv("MAJORSYS_DATA");
  o.data_dir = env_data ? env_data : MAJORSYS_DEFAULT_DATA_DIR;

  app.add_option("--data", o.data_dir, "Directory holding cmudict.dict, brown/ and brown-universal.map");
  app.add_option("--cmudict", o.cmudict, "CMU Pronouncing Dictionary file");
  app.add_option("--corpus", o.corpus, "Tagged corpus file or directory");
  app.add_option("--tagmap", o.tagmap, "Brown -> universal tag map");
  app.add_option("--cache", o.cache, "Cache directory (default: <data>/cache)");
  app.add_flag("--no-cache", o.no_cache, "Neither read nor write the cache");
  app.add_option("--encoder", o.encoder, "random|unigram|ngram|pos|chunk|sentence")->capture_default_str();
  app.add_option("--n", o.n, "n-gram order")->capture_default_str()->check(CLI::Range(1, 5));
  app.add_option("--alpha", o.alpha, "Stupid Backoff factor")->capture_default_str();
  app.add_option("--power", o.power, "Digit-count weight exponent (sentence encoder)")->capture_default_str();
  app.add_option("--chunk-size", o.chunk_size, "Digits per chunk (chunk encoder)")->capture_default_str();
  app.add_option("--mode", o.mode, "n-gram encoder choice: argmax|sample")->capture_default_str();
  app.add_option("--seed", o.seed, "Random seed (printed when omitted)");
  app.add_option("--format", o.format, "plain|table|jsonl")
      ->capture_default_str()
      ->check(CLI::IsMember({"plain", "table", "jsonl"}));

  auto* build = app.add_subcommand("build", "Parse the corpora, train models and write the cache");
  auto* stats = app.add_subcommand("stats", "Print corpus and model statistics");
  std::string digits;
  auto* enc = app.add_subcommand("encode", "Encode a digit string");
  enc->add_option("digits", digits, "Digits to encode")->required();
  std::vector<std::string> words;
  auto* dec = app.add_subcommand("decode", "Decode words back to digits");
  dec->add_option("words", words, "Words (punctuation is ignored)")->required();
  auto* cmp = app.add_subcommand("compare", "Run all six encoders on the same digits");
  cmp->add_option("digits", digits, "Digits to encode")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(ExitCode::kUsage);
  }

  try {
    if (*build) return cmd_build(o);
    if (*stats) return cmd_stats(o);
    if (*enc) return cmd_encode(o, digits);
    if (*dec) return cmd_decode(o, words);
    if (*cmp) return cmd_compare(o, digits);
  } catch (const majorsys::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(e.code());
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::kUsage);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::kData);
  }
  return static_cast<int>(ExitCode::kUsage);
}
