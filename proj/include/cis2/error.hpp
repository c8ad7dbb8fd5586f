#pragma once

#include <cstddef>
#include <exception>
#include <string>
#include <string_view>

namespace cis2 {

// Every failure the toolkit reports maps to exactly one of these kinds.
enum class ErrorKind {
  kSentenceCount,
  kNoRelation,
  kAmbiguousRelation,
  kSelectedSentenceNotFound,
  kDimensionRange,
  kMissingColumn,
  kInvalidEntry,
  kFormat,
  kEmbeddingMiss,
  kEmptyCorpus,
  kDimensionMismatch,
  kDuplicateKey,
  kLabelSyntax,
  kIndexOutOfRange,
  kSelfLoop,
  kDegenerateStatement,
  kLowSimilarity,
  kLengthMismatch,
  kIo,
};

std::string_view error_kind_name(ErrorKind kind);

class Error : public std::exception {
 public:
  Error(ErrorKind kind, std::string detail);

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return error_kind_name(kind_); }
  const std::string& detail() const noexcept { return detail_; }
  const std::string& entry_id() const noexcept { return entry_id_; }

  // Tags the error with the record it came from. Safe to call on an
  // in-flight exception before `throw;`.
  void set_entry_id(std::string id);

  const char* what() const noexcept override { return message_.c_str(); }

 private:
  void rebuild();

  ErrorKind kind_;
  std::string detail_;
  std::string entry_id_;
  std::string message_;
};

class SentenceCountError : public Error {
 public:
  explicit SentenceCountError(int found);
  int found() const noexcept { return found_; }

 private:
  int found_;
};

class NoRelationError : public Error {
 public:
  explicit NoRelationError(std::string_view text);
};

class AmbiguousRelationError : public Error {
 public:
  AmbiguousRelationError(std::string first, std::string second);
  const std::string& first() const noexcept { return first_; }
  const std::string& second() const noexcept { return second_; }

 private:
  std::string first_;
  std::string second_;
};

class SelectedSentenceNotFound : public Error {
 public:
  SelectedSentenceNotFound(std::string_view selected, double best_score);
};

class DimensionRangeError : public Error {
 public:
  explicit DimensionRangeError(std::string_view value);
};

class MissingColumnError : public Error {
 public:
  explicit MissingColumnError(std::string_view column);
};

class InvalidEntryError : public Error {
 public:
  explicit InvalidEntryError(std::string detail) : Error(ErrorKind::kInvalidEntry, std::move(detail)) {}
};

class FormatError : public Error {
 public:
  FormatError(std::size_t line, std::string_view detail);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class EmbeddingMissError : public Error {
 public:
  explicit EmbeddingMissError(std::string_view text);
};

class EmptyCorpusError : public Error {
 public:
  explicit EmptyCorpusError(std::string_view what);
};

class DimensionMismatchError : public Error {
 public:
  DimensionMismatchError(std::size_t line, std::size_t expected, std::size_t found);
};

class DuplicateKeyError : public Error {
 public:
  DuplicateKeyError(std::size_t line, std::string_view key);
};

class LabelSyntaxError : public Error {
 public:
  explicit LabelSyntaxError(std::string detail) : Error(ErrorKind::kLabelSyntax, std::move(detail)) {}
};

class IndexOutOfRangeError : public Error {
 public:
  explicit IndexOutOfRangeError(long index);
};

class SelfLoopError : public Error {
 public:
  explicit SelfLoopError(int index);
};

class DegenerateStatementError : public Error {
 public:
  explicit DegenerateStatementError(std::string detail)
      : Error(ErrorKind::kDegenerateStatement, std::move(detail)) {}
};

class LowSimilarityError : public Error {
 public:
  LowSimilarityError(double best, double floor);
};

class LengthMismatchError : public Error {
 public:
  LengthMismatchError(std::size_t left, std::size_t right);
};

class IoError : public Error {
 public:
  explicit IoError(std::string detail) : Error(ErrorKind::kIo, std::move(detail)) {}
};

// A non-fatal, per-record failure collected during a corpus pass.
struct EntryError {
  std::size_t record = 0;  // 1-based position in the input
  std::string entry_id;
  std::string kind;
  std::string message;

  static EntryError from(const Error& e, std::size_t record);
};

}  // namespace cis2
