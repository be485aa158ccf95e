#pragma once

#include <stdexcept>
#include <string>

namespace seqgen {

// Error hierarchy shared by all modules. Every error carries a stable
// category tag so the CLI can emit one-line machine-parsable diagnostics
// of the form "error: <category>: <message>".
class Error : public std::runtime_error {
 public:
  Error(std::string category, const std::string& message)
      : std::runtime_error(category + ": " + message), category_(std::move(category)) {}

  const std::string& category() const noexcept { return category_; }

 private:
  std::string category_;
};

struct ParseError : Error {
  explicit ParseError(const std::string& m) : Error("ParseError", m) {}
};

struct UnknownTileError : Error {
  explicit UnknownTileError(const std::string& m) : Error("UnknownTileError", m) {}
};

struct VocabularyError : Error {
  explicit VocabularyError(const std::string& m) : Error("VocabularyError", m) {}
};

struct ShapeError : Error {
  explicit ShapeError(const std::string& m) : Error("ShapeError", m) {}
};

struct CacheError : Error {
  explicit CacheError(const std::string& m) : Error("CacheError", m) {}
};

struct NumericalError : Error {
  explicit NumericalError(const std::string& m) : Error("NumericalError", m) {}
};

struct RangeError : Error {
  explicit RangeError(const std::string& m) : Error("RangeError", m) {}
};

struct EmptyCorpusError : Error {
  explicit EmptyCorpusError(const std::string& m) : Error("EmptyCorpusError", m) {}
};

struct EmptyInputError : Error {
  explicit EmptyInputError(const std::string& m) : Error("EmptyInputError", m) {}
};

struct IoError : Error {
  explicit IoError(const std::string& m) : Error("IoError", m) {}
};

struct FormatError : Error {
  explicit FormatError(const std::string& m) : Error("FormatError", m) {}
};

}  // namespace seqgen
