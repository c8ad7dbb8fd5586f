#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cis2 {

enum class SimilarityKind { kTokenF1, kTfidfCosine, kEmbeddingCosine };

std::string_view similarity_name(SimilarityKind kind);  // "token-f1", "tfidf", "embedding"
std::optional<SimilarityKind> parse_similarity_kind(std::string_view name);

// Symmetric sentence similarity; identical strings score the top of the
// backend's range (1 for every kind).
class SimilarityBackend {
 public:
  virtual ~SimilarityBackend() = default;
  virtual SimilarityKind kind() const = 0;
  virtual double similarity(std::string_view a, std::string_view b) const = 0;
};

class TokenF1Similarity final : public SimilarityBackend {
 public:
  SimilarityKind kind() const override { return SimilarityKind::kTokenF1; }
  double similarity(std::string_view a, std::string_view b) const override;
};

// Smoothed inverse document frequency over normalized unigrams:
//   idf(t) = ln((1 + N) / (1 + df(t))) + 1
class IdfTable {
 public:
  IdfTable() = default;
  IdfTable(std::map<std::string, std::size_t, std::less<>> document_frequency, std::size_t documents);

  double idf(std::string_view token) const;
  std::size_t documents() const noexcept { return documents_; }
  std::size_t vocabulary_size() const noexcept { return df_.size(); }

 private:
  std::map<std::string, std::size_t, std::less<>> df_;
  std::size_t documents_ = 0;
};

// Throws EmptyCorpusError when `corpus` is empty.
IdfTable fit_idf(std::span<const std::string> corpus);

class TfidfCosineSimilarity final : public SimilarityBackend {
 public:
  explicit TfidfCosineSimilarity(IdfTable idf) : idf_(std::move(idf)) {}
  SimilarityKind kind() const override { return SimilarityKind::kTfidfCosine; }
  double similarity(std::string_view a, std::string_view b) const override;
  const IdfTable& idf() const noexcept { return idf_; }

 private:
  IdfTable idf_;
};

// Exact sentence string -> unit vector. File format: one JSON object per
// line, {"text": "...", "vector": [d reals]}, d fixed per file.
class EmbeddingTable {
 public:
  std::size_t size() const noexcept { return vectors_.size(); }
  std::size_t dimension() const noexcept { return dimension_; }
  const std::vector<double>* find(std::string_view text) const;

  // Renormalizes `vector`; throws DuplicateKeyError or DimensionMismatchError
  // (`line` is only used for the message).
  void insert(std::string text, std::vector<double> vector, std::size_t line = 0);

 private:
  std::unordered_map<std::string, std::vector<double>> vectors_;
  std::size_t dimension_ = 0;
};

EmbeddingTable load_embedding_table(std::istream& in);
EmbeddingTable load_embedding_table(const std::filesystem::path& path);

class EmbeddingCosineSimilarity final : public SimilarityBackend {
 public:
  explicit EmbeddingCosineSimilarity(std::shared_ptr<const EmbeddingTable> table) : table_(std::move(table)) {}
  SimilarityKind kind() const override { return SimilarityKind::kEmbeddingCosine; }
  // Throws EmbeddingMissError when either string has no vector.
  double similarity(std::string_view a, std::string_view b) const override;

 private:
  std::shared_ptr<const EmbeddingTable> table_;
};

}  // namespace cis2
