#include "cis2/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "cis2/corpus_io.hpp"
#include "cis2/error.hpp"
#include "cis2/text.hpp"

namespace cis2 {

namespace {

std::map<std::string, double> term_counts(std::string_view s) {
  std::map<std::string, double> counts;
  for (auto& t : match_tokens(s)) counts[std::move(t)] += 1.0;
  return counts;
}

double clamp_unit(double v) { return std::clamp(v, -1.0, 1.0); }

}  // namespace

std::string_view similarity_name(SimilarityKind kind) {
  switch (kind) {
    case SimilarityKind::kTokenF1: return "token-f1";
    case SimilarityKind::kTfidfCosine: return "tfidf";
    case SimilarityKind::kEmbeddingCosine: return "embedding";
  }
  return "unknown";
}

std::optional<SimilarityKind> parse_similarity_kind(std::string_view name) {
  if (name == "token-f1") return SimilarityKind::kTokenF1;
  if (name == "tfidf") return SimilarityKind::kTfidfCosine;
  if (name == "embedding") return SimilarityKind::kEmbeddingCosine;
  return std::nullopt;
}

double TokenF1Similarity::similarity(std::string_view a, std::string_view b) const { return token_f1(a, b); }

IdfTable::IdfTable(std::map<std::string, std::size_t, std::less<>> document_frequency, std::size_t documents)
    : df_(std::move(document_frequency)), documents_(documents) {}

double IdfTable::idf(std::string_view token) const {
  auto it = df_.find(token);
  const double df = it == df_.end() ? 0.0 : static_cast<double>(it->second);
  return std::log((1.0 + static_cast<double>(documents_)) / (1.0 + df)) + 1.0;
}

IdfTable fit_idf(std::span<const std::string> corpus) {
  if (corpus.empty()) throw EmptyCorpusError("cannot fit IDF on an empty corpus");
  std::map<std::string, std::size_t, std::less<>> df;
  for (const auto& doc : corpus) {
    auto tokens = match_tokens(doc);
    std::set<std::string> unique(tokens.begin(), tokens.end());
    for (const auto& t : unique) ++df[t];
  }
  return IdfTable(std::move(df), corpus.size());
}

double TfidfCosineSimilarity::similarity(std::string_view a, std::string_view b) const {
  auto ca = term_counts(a);
  auto cb = term_counts(b);
  if (ca.empty() || cb.empty()) return ca.empty() && cb.empty() ? 1.0 : 0.0;
  if (ca == cb) return 1.0;

  auto weight_norm = [&](std::map<std::string, double>& counts) {
    double sq = 0.0;
    for (auto& [term, w] : counts) {
      w *= idf_.idf(term);
      sq += w * w;
    }
    return std::sqrt(sq);
  };
  const double na = weight_norm(ca);
  const double nb = weight_norm(cb);

  // Walk both sorted maps together so the summation order is the same for
  // (a, b) and (b, a).
  double dot = 0.0;
  auto ia = ca.begin();
  auto ib = cb.begin();
  while (ia != ca.end() && ib != cb.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      dot += ia->second * ib->second;
      ++ia;
      ++ib;
    }
  }
  if (dot == 0.0) return 0.0;
  return clamp_unit(dot / (na * nb));
}

const std::vector<double>* EmbeddingTable::find(std::string_view text) const {
  auto it = vectors_.find(std::string(text));
  return it == vectors_.end() ? nullptr : &it->second;
}

void EmbeddingTable::insert(std::string text, std::vector<double> vector, std::size_t line) {
  if (vector.empty()) throw FormatError(line, "empty vector");
  if (dimension_ == 0) dimension_ = vector.size();
  if (vector.size() != dimension_) throw DimensionMismatchError(line, dimension_, vector.size());
  if (vectors_.count(text)) throw DuplicateKeyError(line, text);
  double sq = 0.0;
  for (double v : vector) sq += v * v;
  const double norm = std::sqrt(sq);
  if (!(norm > 0.0) || !std::isfinite(norm)) throw FormatError(line, "vector has zero or non-finite norm");
  for (double& v : vector) v /= norm;
  vectors_.emplace(std::move(text), std::move(vector));
}

EmbeddingTable load_embedding_table(std::istream& in) {
  EmbeddingTable table;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (trim(line).empty()) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::parse_error& e) {
      throw FormatError(n, e.what());
    }
    if (!j.is_object() || !j.contains("text") || !j.contains("vector") || !j["text"].is_string() ||
        !j["vector"].is_array()) {
      throw FormatError(n, "expected {\"text\": string, \"vector\": [numbers]}");
    }
    std::vector<double> vec;
    vec.reserve(j["vector"].size());
    for (const auto& v : j["vector"]) {
      if (!v.is_number()) throw FormatError(n, "non-numeric vector component");
      vec.push_back(v.get<double>());
    }
    table.insert(j["text"].get<std::string>(), std::move(vec), n);
  }
  return table;
}

EmbeddingTable load_embedding_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return load_embedding_table(in);
}

double EmbeddingCosineSimilarity::similarity(std::string_view a, std::string_view b) const {
  const auto* va = table_->find(a);
  if (!va) throw EmbeddingMissError(a);
  const auto* vb = table_->find(b);
  if (!vb) throw EmbeddingMissError(b);
  if (a == b) return 1.0;
  double dot = 0.0;
  for (std::size_t i = 0; i < va->size(); ++i) dot += (*va)[i] * (*vb)[i];
  return clamp_unit(dot);
}

}  // namespace cis2
