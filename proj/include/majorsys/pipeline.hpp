#pragma once

// Loading the lexicon, models and index from source data, with an on-disk
// cache keyed by the content of the inputs and the model hyperparameters.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "majorsys/corpus.hpp"
#include "majorsys/encoders.hpp"
#include "majorsys/error.hpp"
#include "majorsys/index.hpp"
#include "majorsys/langmodel.hpp"

namespace majorsys {

struct DataPaths {
  std::filesystem::path cmudict;
  std::filesystem::path corpus;  // file or directory
  std::filesystem::path tagmap;
  std::optional<std::filesystem::path> cache_dir;
};

struct BuildReport {
  CorpusStats corpus;
  std::size_t dictionary_words = 0;
  std::size_t lexicon_words = 0;
  std::size_t indexed_words = 0;
  std::size_t templates = 0;
  std::string cache_key;
  bool from_cache = false;
};

struct Resources {
  Lexicon lexicon;
  LanguageModel lm;
  EncodingIndex index;
  BuildReport report;

  EncoderResources view() const { return {index, lm}; }
};

namespace detail {

class Fnv1a {
 public:
  void update(std::string_view bytes) {
    for (unsigned char c : bytes) {
      h_ ^= c;
      h_ *= 1099511628211ull;
    }
  }
  void update_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw DataError("cannot open " + p.string());
    update(p.filename().string());
    char buf[1 << 16];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) update(std::string_view(buf, in.gcount()));
  }
  std::string hex() const {
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h_;
    return os.str();
  }

 private:
  std::uint64_t h_ = 1469598103934665603ull;
};

inline void require_exists(const std::filesystem::path& p, std::string_view what) {
  if (p.empty() || !std::filesystem::exists(p)) {
    throw DataError(std::string(what) + " not found: " + (p.empty() ? "(no path given)" : p.string()));
  }
}

}  // namespace detail

/// Content hash of all inputs plus the hyperparameters that shape the counts.
inline std::string cache_key(const DataPaths& paths, const ModelOptions& opt) {
  namespace fs = std::filesystem;
  detail::Fnv1a h;
  h.update_file(paths.cmudict);
  h.update_file(paths.tagmap);
  if (fs::is_directory(paths.corpus)) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(paths.corpus)) {
      if (e.is_regular_file()) files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) h.update_file(f);
  } else {
    h.update_file(paths.corpus);
  }
  h.update("n=" + std::to_string(opt.order) + ";top=" + std::to_string(opt.top_templates) +
           ";min=" + std::to_string(opt.min_template_words));
  return h.hex();
}

inline std::filesystem::path lexicon_cache_path(const std::filesystem::path& dir) { return dir / "lexicon.tsv"; }
inline std::filesystem::path model_cache_path(const std::filesystem::path& dir) { return dir / "model.txt"; }

inline void finish_resources(Resources& r) {
  r.index = EncodingIndex(r.lexicon, [&](std::string_view w) { return r.lm.vocab.id(w); });
  r.report.lexicon_words = r.lexicon.size();
  r.report.indexed_words = r.index.size();
  r.report.templates = r.lm.templates.size();
  r.report.corpus = r.lexicon.corpus_stats();
}

/// Trains everything from already-parsed inputs.
inline Resources make_resources(const PronunciationDict& dict, const TaggedCorpus& corpus,
                                const ModelOptions& opt = {}) {
  Resources r;
  r.lexicon = build_lexicon(dict, corpus.sentences(), corpus.stats());
  r.lm = train_language_model(corpus.sentences(), opt);
  r.report.dictionary_words = dict.size();
  finish_resources(r);
  return r;
}

/// Parses the source files and trains everything, ignoring any cache.
inline Resources build_resources(const DataPaths& paths, const ModelOptions& opt = {}) {
  detail::require_exists(paths.cmudict, "pronunciation dictionary");
  detail::require_exists(paths.corpus, "tagged corpus");
  detail::require_exists(paths.tagmap, "tag map");

  std::ifstream tag_in(paths.tagmap);
  const auto tags = TagMap::parse(tag_in, paths.tagmap.string());
  std::ifstream dict_in(paths.cmudict);
  const auto dict = parse_cmudict(dict_in, paths.cmudict.string());
  TaggedCorpus corpus;
  corpus.read_path(paths.corpus, tags);

  return make_resources(dict, corpus, opt);
}

inline void write_cache(const std::filesystem::path& dir, const Resources& r, const std::string& key) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(lexicon_cache_path(dir), std::ios::binary);
    write_lexicon(out, r.lexicon);
    if (!out) throw DataError("cannot write " + lexicon_cache_path(dir).string());
  }
  std::ofstream out(model_cache_path(dir), std::ios::binary);
  write_language_model(out, r.lm, key);
  if (!out) throw DataError("cannot write " + model_cache_path(dir).string());
}

/// Key stored in the cache directory, if a complete cache is present.
inline std::optional<std::string> cached_key(const std::filesystem::path& dir) {
  if (!std::filesystem::exists(lexicon_cache_path(dir))) return std::nullopt;
  std::ifstream in(model_cache_path(dir));
  if (!in) return std::nullopt;
  return read_model_key(in);
}

inline Resources read_cache(const std::filesystem::path& dir, double alpha) {
  Resources r;
  {
    std::ifstream in(lexicon_cache_path(dir));
    r.lexicon = read_lexicon(in, lexicon_cache_path(dir).string());
  }
  std::ifstream in(model_cache_path(dir));
  r.lm = read_language_model(in, alpha);
  r.report.cache_key = *cached_key(dir);
  r.report.from_cache = true;
  finish_resources(r);
  return r;
}

/// Uses the cache when its key matches the inputs; otherwise rebuilds and
/// (if a cache directory is configured) rewrites it. Notices go to `log`.
inline Resources load_resources(const DataPaths& paths, const ModelOptions& opt = {},
                                std::ostream* log = nullptr) {
  detail::require_exists(paths.cmudict, "pronunciation dictionary");
  detail::require_exists(paths.corpus, "tagged corpus");
  detail::require_exists(paths.tagmap, "tag map");
  const auto key = cache_key(paths, opt);
  if (paths.cache_dir) {
    const auto existing = cached_key(*paths.cache_dir);
    if (existing && *existing == key) return read_cache(*paths.cache_dir, opt.alpha);
    if (existing && log) *log << "note: cache in " << paths.cache_dir->string() << " is stale; rebuilding\n";
  }
  auto r = build_resources(paths, opt);
  r.report.cache_key = key;
  if (paths.cache_dir) write_cache(*paths.cache_dir, r, key);
  return r;
}

}  // namespace majorsys
