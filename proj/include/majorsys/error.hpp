#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace majorsys {

/// Process exit codes shared by the CLI and the error hierarchy.
enum class ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kData = 2,
  kUnencodable = 3,
};

class Error : public std::runtime_error {
 public:
  Error(ExitCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ExitCode code() const noexcept { return code_; }

 private:
  ExitCode code_;
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(ExitCode::kUsage, what) {}
};

/// Malformed or inconsistent input data (dictionary, corpus, cache files).
class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(ExitCode::kData, what) {}
};

/// A parse failure tied to a location in a named source.
class ParseError : public DataError {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : DataError(source + ":" + std::to_string(line) + ": " + what), source_(source), line_(line) {}

  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

class UnknownSymbolError : public DataError {
 public:
  explicit UnknownSymbolError(const std::string& symbol)
      : DataError("unknown Arpabet symbol '" + symbol + "'"), symbol_(symbol) {}
  const std::string& symbol() const noexcept { return symbol_; }

 private:
  std::string symbol_;
};

class UnknownWordError : public DataError {
 public:
  explicit UnknownWordError(const std::string& word)
      : DataError("word not in lexicon: '" + word + "'"), word_(word) {}
  const std::string& word() const noexcept { return word_; }

 private:
  std::string word_;
};

/// The lexicon (or template store) cannot cover the requested digits.
class UnencodableError : public Error {
 public:
  explicit UnencodableError(const std::string& what) : Error(ExitCode::kUnencodable, what) {}
};

}  // namespace majorsys
