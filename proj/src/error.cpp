#include "cis2/error.hpp"

#include <utility>

namespace cis2 {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kSentenceCount: return "SentenceCountError";
    case ErrorKind::kNoRelation: return "NoRelationError";
    case ErrorKind::kAmbiguousRelation: return "AmbiguousRelationError";
    case ErrorKind::kSelectedSentenceNotFound: return "SelectedSentenceNotFound";
    case ErrorKind::kDimensionRange: return "DimensionRangeError";
    case ErrorKind::kMissingColumn: return "MissingColumnError";
    case ErrorKind::kInvalidEntry: return "InvalidEntryError";
    case ErrorKind::kFormat: return "FormatError";
    case ErrorKind::kEmbeddingMiss: return "EmbeddingMissError";
    case ErrorKind::kEmptyCorpus: return "EmptyCorpusError";
    case ErrorKind::kDimensionMismatch: return "DimensionMismatchError";
    case ErrorKind::kDuplicateKey: return "DuplicateKeyError";
    case ErrorKind::kLabelSyntax: return "LabelSyntaxError";
    case ErrorKind::kIndexOutOfRange: return "IndexOutOfRangeError";
    case ErrorKind::kSelfLoop: return "SelfLoopError";
    case ErrorKind::kDegenerateStatement: return "DegenerateStatementError";
    case ErrorKind::kLowSimilarity: return "LowSimilarityError";
    case ErrorKind::kLengthMismatch: return "LengthMismatchError";
    case ErrorKind::kIo: return "IoError";
  }
  return "Error";
}

Error::Error(ErrorKind kind, std::string detail) : kind_(kind), detail_(std::move(detail)) {
  rebuild();
}

void Error::set_entry_id(std::string id) {
  entry_id_ = std::move(id);
  rebuild();
}

void Error::rebuild() {
  message_.assign(name());
  if (!entry_id_.empty()) message_ += " [" + entry_id_ + "]";
  if (!detail_.empty()) message_ += ": " + detail_;
}

SentenceCountError::SentenceCountError(int found)
    : Error(ErrorKind::kSentenceCount, "expected 5 sentences, found " + std::to_string(found)),
      found_(found) {}

NoRelationError::NoRelationError(std::string_view text)
    : Error(ErrorKind::kNoRelation, "no relation connective in \"" + std::string(text) + "\"") {}

AmbiguousRelationError::AmbiguousRelationError(std::string first, std::string second)
    : Error(ErrorKind::kAmbiguousRelation, "both \"" + first + "\" and \"" + second + "\" occur"),
      first_(std::move(first)),
      second_(std::move(second)) {}

SelectedSentenceNotFound::SelectedSentenceNotFound(std::string_view selected, double best_score)
    : Error(ErrorKind::kSelectedSentenceNotFound,
            "\"" + std::string(selected) + "\" (best similarity " + std::to_string(best_score) + ")") {}

DimensionRangeError::DimensionRangeError(std::string_view value)
    : Error(ErrorKind::kDimensionRange, "dimension \"" + std::string(value) + "\" not in [1,10]") {}

MissingColumnError::MissingColumnError(std::string_view column)
    : Error(ErrorKind::kMissingColumn, "missing column \"" + std::string(column) + "\"") {}

FormatError::FormatError(std::size_t line, std::string_view detail)
    : Error(ErrorKind::kFormat, "line " + std::to_string(line) + ": " + std::string(detail)), line_(line) {}

EmbeddingMissError::EmbeddingMissError(std::string_view text)
    : Error(ErrorKind::kEmbeddingMiss, "no vector for \"" + std::string(text) + "\"") {}

EmptyCorpusError::EmptyCorpusError(std::string_view what)
    : Error(ErrorKind::kEmptyCorpus, std::string(what)) {}

DimensionMismatchError::DimensionMismatchError(std::size_t line, std::size_t expected, std::size_t found)
    : Error(ErrorKind::kDimensionMismatch, "line " + std::to_string(line) + ": expected dimension " +
                                               std::to_string(expected) + ", found " + std::to_string(found)) {}

DuplicateKeyError::DuplicateKeyError(std::size_t line, std::string_view key)
    : Error(ErrorKind::kDuplicateKey, "line " + std::to_string(line) + ": duplicate key \"" + std::string(key) + "\"") {}

IndexOutOfRangeError::IndexOutOfRangeError(long index)
    : Error(ErrorKind::kIndexOutOfRange, "sentence index " + std::to_string(index) + " not in [0,4]") {}

SelfLoopError::SelfLoopError(int index)
    : Error(ErrorKind::kSelfLoop, "both label tokens point at sentence " + std::to_string(index)) {}

LowSimilarityError::LowSimilarityError(double best, double floor)
    : Error(ErrorKind::kLowSimilarity,
            "best candidate similarity " + std::to_string(best) + " below floor " + std::to_string(floor)) {}

LengthMismatchError::LengthMismatchError(std::size_t left, std::size_t right)
    : Error(ErrorKind::kLengthMismatch, std::to_string(left) + " vs " + std::to_string(right) + " items") {}

EntryError EntryError::from(const Error& e, std::size_t record) {
  return {record, e.entry_id(), std::string(e.name()), e.what()};
}

}  // namespace cis2
