#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "cis2/error.hpp"
#include "cis2/similarity.hpp"
#include "fixtures.hpp"

namespace cis2 {
namespace {

const std::vector<std::string> kPairs = {"Fred misses his bus",       "He just missed his bus.",
                                         "He then went to his mom's room.", "the the bus",
                                         "Someone_A misses Something_A", ""};

TEST(Similarity, KindNames) {
  for (auto k : {SimilarityKind::kTokenF1, SimilarityKind::kTfidfCosine, SimilarityKind::kEmbeddingCosine}) {
    EXPECT_EQ(parse_similarity_kind(similarity_name(k)), k);
  }
  EXPECT_FALSE(parse_similarity_kind("bm25"));
}

TEST(TokenF1Backend, Examples) {
  TokenF1Similarity f1;
  EXPECT_DOUBLE_EQ(f1.similarity("fred misses his bus", "Fred misses his bus."), 1.0);
  EXPECT_DOUBLE_EQ(f1.similarity("a b c d", "a b x y"), 0.5);
}

TEST(Idf, FormulaValues) {
  std::vector<std::string> corpus = {"a b", "a c"};
  auto idf = fit_idf(corpus);
  EXPECT_DOUBLE_EQ(idf.idf("a"), 1.0);
  EXPECT_NEAR(idf.idf("b"), 1.405, 5e-4);
  EXPECT_DOUBLE_EQ(idf.idf("b"), std::log(1.5) + 1.0);
  EXPECT_DOUBLE_EQ(idf.idf("zzz"), std::log(3.0) + 1.0);
  EXPECT_EQ(idf.documents(), 2u);
  EXPECT_EQ(idf.vocabulary_size(), 3u);
}

TEST(Idf, DocumentFrequencyCountsOncePerDocument) {
  std::vector<std::string> corpus = {"A a a", "b"};
  EXPECT_DOUBLE_EQ(fit_idf(corpus).idf("a"), std::log(1.5) + 1.0);
}

TEST(Idf, EmptyCorpus) {
  std::vector<std::string> corpus;
  EXPECT_THROW(fit_idf(corpus), EmptyCorpusError);
}

TEST(TfidfBackend, DisjointIsZeroIdenticalIsOne) {
  const auto fred = testing::fred_entry();
  std::vector<std::string> corpus(fred.sentences.begin(), fred.sentences.end());
  TfidfCosineSimilarity t(fit_idf(corpus));
  EXPECT_EQ(t.similarity("fred woke", "his mom"), 0.0);
  EXPECT_EQ(t.similarity("He just missed his bus.", "he just missed his BUS"), 1.0);
  EXPECT_GT(t.similarity("Fred misses his bus", "He just missed his bus."), 0.0);
  EXPECT_LT(t.similarity("Fred misses his bus", "He just missed his bus."), 1.0);
}

TEST(Backends, SymmetricDeterministicSelfMaximal) {
  std::vector<std::string> corpus(kPairs.begin(), kPairs.end());
  auto table = std::make_shared<EmbeddingTable>();
  for (std::size_t i = 0; i < kPairs.size(); ++i) {
    table->insert(kPairs[i], {std::sin(i + 1.0), std::cos(i * 2.0), 0.5 + static_cast<double>(i)});
  }
  TokenF1Similarity f1;
  TfidfCosineSimilarity tfidf(fit_idf(corpus));
  EmbeddingCosineSimilarity emb(table);
  for (const SimilarityBackend* b : std::initializer_list<const SimilarityBackend*>{&f1, &tfidf, &emb}) {
    for (const auto& x : kPairs) {
      EXPECT_EQ(b->similarity(x, x), 1.0) << similarity_name(b->kind());
      for (const auto& y : kPairs) {
        const double s = b->similarity(x, y);
        EXPECT_EQ(s, b->similarity(y, x));
        EXPECT_EQ(s, b->similarity(x, y));
        EXPECT_LE(s, 1.0);
      }
    }
  }
}

TEST(TokenF1Backend, PunctuationAndCaseInvariant) {
  TokenF1Similarity f1;
  EXPECT_EQ(f1.similarity("FRED, misses his bus!", "He just missed his bus."),
            f1.similarity("fred misses his bus", "He just missed his bus"));
}

TEST(EmbeddingTable, LoadsRows) {
  std::istringstream in(
      "{\"text\": \"a\", \"vector\": [1, 0, 0, 0]}\n"
      "{\"text\": \"b\", \"vector\": [0, 2, 0, 0]}\n"
      "\n"
      "{\"text\": \"c\", \"vector\": [1, 1, 1, 1]}\n");
  auto table = load_embedding_table(in);
  EXPECT_EQ(table.size(), 3u);
  EXPECT_EQ(table.dimension(), 4u);
  const auto* v = table.find("c");
  ASSERT_NE(v, nullptr);
  double sq = 0.0;
  for (double x : *v) sq += x * x;
  EXPECT_NEAR(sq, 1.0, 1e-12);
  EXPECT_EQ(table.find("d"), nullptr);
}

TEST(EmbeddingTable, MixedDimensions) {
  std::istringstream in(
      "{\"text\": \"a\", \"vector\": [1, 0, 0, 0]}\n"
      "{\"text\": \"b\", \"vector\": [1, 0, 0, 0, 0, 0, 0, 0]}\n");
  EXPECT_THROW(load_embedding_table(in), DimensionMismatchError);
}

TEST(EmbeddingTable, DuplicateText) {
  std::istringstream in(
      "{\"text\": \"a\", \"vector\": [1, 0]}\n"
      "{\"text\": \"a\", \"vector\": [0, 1]}\n");
  EXPECT_THROW(load_embedding_table(in), DuplicateKeyError);
}

TEST(EmbeddingTable, MalformedLines) {
  for (const char* text : {"not json\n", "{\"text\": \"a\"}\n", "{\"text\": \"a\", \"vector\": [\"x\"]}\n",
                           "{\"text\": \"a\", \"vector\": [0, 0]}\n", "{\"text\": \"a\", \"vector\": []}\n"}) {
    std::istringstream in(text);
    EXPECT_THROW(load_embedding_table(in), FormatError) << text;
  }
  EXPECT_THROW(load_embedding_table(std::filesystem::path("/nonexistent/table.jsonl")), IoError);
}

TEST(EmbeddingBackend, EqualVectorsScoreOne) {
  auto table = std::make_shared<EmbeddingTable>();
  table->insert("a", {0.3, 0.4});
  table->insert("b", {0.6, 0.8});
  table->insert("c", {-0.3, -0.4});
  EmbeddingCosineSimilarity emb(table);
  EXPECT_NEAR(emb.similarity("a", "b"), 1.0, 1e-12);
  EXPECT_NEAR(emb.similarity("a", "c"), -1.0, 1e-12);
}

TEST(EmbeddingBackend, MissingKey) {
  auto table = std::make_shared<EmbeddingTable>();
  table->insert("a", {1.0});
  EmbeddingCosineSimilarity emb(table);
  EXPECT_THROW(emb.similarity("a", "zzz"), EmbeddingMissError);
  EXPECT_THROW(emb.similarity("zzz", "a"), EmbeddingMissError);
}

}  // namespace
}  // namespace cis2
