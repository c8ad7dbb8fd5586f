#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cis2 {

inline constexpr int kMaxNgramOrder = 4;

// mteval-v13a tokenization as done by SacreBLEU's default "13a" tokenizer:
// strip "<skipped>", join "-\n" breaks, unescape &quot; &amp; &lt; &gt;,
// pad ASCII symbols, split periods and commas unless between digits, split a
// dash that follows a digit.
std::vector<std::string> tokenize_13a(std::string_view text);

// Sufficient statistics for corpus BLEU; additive over segments.
struct BleuStats {
  long hyp_len = 0;
  long ref_len = 0;
  std::array<long, kMaxNgramOrder> correct{};
  std::array<long, kMaxNgramOrder> total{};

  BleuStats& operator+=(const BleuStats& other);
};

BleuStats segment_stats(std::span<const std::string> hyp_tokens, std::span<const std::string> ref_tokens);
BleuStats segment_stats(std::string_view hypothesis, std::string_view reference);

struct BleuScore {
  double score = 0.0;  // [0, 100]
  std::array<double, kMaxNgramOrder> precisions{};
  double brevity_penalty = 1.0;
  BleuStats stats;
};

// Uniform 4-gram weights, exponential brevity penalty, and the "exp"
// smoothing SacreBLEU applies by default to orders with no matches.
BleuScore compute_bleu(const BleuStats& stats);

// One reference per hypothesis. Throws LengthMismatchError or
// EmptyCorpusError.
BleuScore corpus_bleu_score(std::span<const std::string> hypotheses, std::span<const std::string> references);
double corpus_bleu(std::span<const std::string> hypotheses, std::span<const std::string> references);

}  // namespace cis2
