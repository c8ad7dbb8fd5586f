#include "cis2/bleu.hpp"

#include <algorithm>

#include <cmath>
#include <unordered_map>

#include "cis2/error.hpp"

namespace cis2 {

namespace {

// Byte length of the whitespace code point starting at s[i], or 0. Covers
// everything Python's str.split() treats as whitespace.
std::size_t space_len(std::string_view s, std::size_t i) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  if ((b0 >= 0x09 && b0 <= 0x0d) || (b0 >= 0x1c && b0 <= 0x20)) return 1;
  const auto at = [&](std::size_t k) { return i + k < s.size() ? static_cast<unsigned char>(s[i + k]) : 0u; };
  if (b0 == 0xC2 && (at(1) == 0x85 || at(1) == 0xA0)) return 2;
  if (b0 == 0xE1 && at(1) == 0x9A && at(2) == 0x80) return 3;
  if (b0 == 0xE2 && at(1) == 0x80) {
    const auto b2 = at(2);
    if ((b2 >= 0x80 && b2 <= 0x8A) || b2 == 0xA8 || b2 == 0xA9 || b2 == 0xAF) return 3;
  }
  if (b0 == 0xE2 && at(1) == 0x81 && at(2) == 0x9F) return 3;
  if (b0 == 0xE3 && at(1) == 0x80 && at(2) == 0x80) return 3;
  return 0;
}

std::string_view rstrip(std::string_view s) {
  while (!s.empty()) {
    bool stripped = false;
    for (std::size_t len = 1; len <= 3 && len <= s.size(); ++len) {
      const std::size_t start = s.size() - len;
      if (space_len(s, start) == len) {
        s.remove_suffix(len);
        stripped = true;
        break;
      }
    }
    if (!stripped) break;
  }
  return s;
}

void replace_all(std::string& s, std::string_view from, std::string_view to) {
  if (from.empty()) return;
  std::string out;
  std::size_t start = 0;
  for (auto pos = s.find(from); pos != std::string::npos; pos = s.find(from, start)) {
    out.append(s, start, pos - start);
    out.append(to);
    start = pos + from.size();
  }
  if (start == 0) return;
  out.append(s, start, std::string::npos);
  s = std::move(out);
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// [\{-\~\[-\` -\&\(-\+\:-\@\/]
bool is_padded_symbol(char c) {
  return (c >= '{' && c <= '~') || (c >= '[' && c <= '`') || (c >= ' ' && c <= '&') || (c >= '(' && c <= '+') ||
         (c >= ':' && c <= '@') || c == '/';
}

std::vector<std::string> split_python(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t n;
    while (i < s.size() && (n = space_len(s, i)) > 0) i += n;
    std::size_t j = i;
    while (j < s.size() && space_len(s, j) == 0) ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::unordered_map<std::string, long> ngram_counts(std::span<const std::string> tokens) {
  std::unordered_map<std::string, long> counts;
  for (int n = 1; n <= kMaxNgramOrder; ++n) {
    for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= tokens.size(); ++i) {
      std::string key = tokens[i];
      for (int k = 1; k < n; ++k) {
        key += ' ';
        key += tokens[i + static_cast<std::size_t>(k)];
      }
      ++counts[key];
    }
  }
  return counts;
}

int order_of(const std::string& ngram) {
  int spaces = 0;
  for (char c : ngram) spaces += c == ' ';
  return spaces + 1;
}

// SacreBLEU maps log(0) to this sentinel instead of -inf.
double sacre_log(double p) { return p == 0.0 ? -9999999999.0 : std::log(p); }

}  // namespace

std::vector<std::string> tokenize_13a(std::string_view text) {
  std::string line(rstrip(text));
  replace_all(line, "<skipped>", "");
  replace_all(line, "-\n", "");
  replace_all(line, "\n", " ");
  if (line.find('&') != std::string::npos) {
    replace_all(line, "&quot;", "\"");
    replace_all(line, "&amp;", "&");
    replace_all(line, "&lt;", "<");
    replace_all(line, "&gt;", ">");
  }

  std::string padded;
  padded.reserve(line.size() * 2 + 2);
  padded += ' ';
  for (char c : line) {
    if (is_padded_symbol(c)) {
      padded += ' ';
      padded += c;
      padded += ' ';
    } else {
      padded += c;
    }
  }
  padded += ' ';

  // Period/comma not preceded by a digit.
  std::string pass;
  pass.reserve(padded.size() * 2);
  for (std::size_t i = 0; i < padded.size();) {
    if (i + 1 < padded.size() && !is_digit(padded[i]) && (padded[i + 1] == '.' || padded[i + 1] == ',')) {
      pass += padded[i];
      pass += ' ';
      pass += padded[i + 1];
      pass += ' ';
      i += 2;
    } else {
      pass += padded[i++];
    }
  }

  // Period/comma not followed by a digit.
  std::string pass2;
  pass2.reserve(pass.size() * 2);
  for (std::size_t i = 0; i < pass.size();) {
    if (i + 1 < pass.size() && (pass[i] == '.' || pass[i] == ',') && !is_digit(pass[i + 1])) {
      pass2 += ' ';
      pass2 += pass[i];
      pass2 += ' ';
      pass2 += pass[i + 1];
      i += 2;
    } else {
      pass2 += pass[i++];
    }
  }

  // Dash preceded by a digit.
  std::string pass3;
  pass3.reserve(pass2.size() * 2);
  for (std::size_t i = 0; i < pass2.size();) {
    if (i + 1 < pass2.size() && is_digit(pass2[i]) && pass2[i + 1] == '-') {
      pass3 += pass2[i];
      pass3 += " - ";
      i += 2;
    } else {
      pass3 += pass2[i++];
    }
  }

  return split_python(pass3);
}

BleuStats& BleuStats::operator+=(const BleuStats& other) {
  hyp_len += other.hyp_len;
  ref_len += other.ref_len;
  for (int n = 0; n < kMaxNgramOrder; ++n) {
    correct[n] += other.correct[n];
    total[n] += other.total[n];
  }
  return *this;
}

BleuStats segment_stats(std::span<const std::string> hyp_tokens, std::span<const std::string> ref_tokens) {
  BleuStats stats;
  stats.hyp_len = static_cast<long>(hyp_tokens.size());
  stats.ref_len = static_cast<long>(ref_tokens.size());
  const auto ref = ngram_counts(ref_tokens);
  for (const auto& [ngram, count] : ngram_counts(hyp_tokens)) {
    const int n = order_of(ngram) - 1;
    stats.total[n] += count;
    if (auto it = ref.find(ngram); it != ref.end()) stats.correct[n] += std::min(count, it->second);
  }
  return stats;
}

BleuStats segment_stats(std::string_view hypothesis, std::string_view reference) {
  return segment_stats(tokenize_13a(hypothesis), tokenize_13a(reference));
}

BleuScore compute_bleu(const BleuStats& stats) {
  BleuScore out;
  out.stats = stats;
  if (stats.hyp_len < stats.ref_len) {
    out.brevity_penalty =
        stats.hyp_len > 0 ? std::exp(1.0 - static_cast<double>(stats.ref_len) / static_cast<double>(stats.hyp_len))
                          : 0.0;
  }
  bool any_match = false;
  for (long c : stats.correct) any_match = any_match || c != 0;
  if (!any_match) return out;

  double smooth = 1.0;
  for (int n = 0; n < kMaxNgramOrder; ++n) {
    if (stats.total[n] == 0) break;
    if (stats.correct[n] == 0) {
      smooth *= 2.0;
      out.precisions[n] = 100.0 / (smooth * static_cast<double>(stats.total[n]));
    } else {
      out.precisions[n] = 100.0 * static_cast<double>(stats.correct[n]) / static_cast<double>(stats.total[n]);
    }
  }
  double log_sum = 0.0;
  for (double p : out.precisions) log_sum += sacre_log(p);
  // exp(log(100)) can land a few ulps above 100
  out.score = std::min(100.0, out.brevity_penalty * std::exp(log_sum / kMaxNgramOrder));
  return out;
}

BleuScore corpus_bleu_score(std::span<const std::string> hypotheses, std::span<const std::string> references) {
  if (hypotheses.size() != references.size()) throw LengthMismatchError(hypotheses.size(), references.size());
  if (hypotheses.empty()) throw EmptyCorpusError("BLEU needs at least one segment");
  BleuStats total;
  for (std::size_t i = 0; i < hypotheses.size(); ++i) total += segment_stats(hypotheses[i], references[i]);
  return compute_bleu(total);
}

double corpus_bleu(std::span<const std::string> hypotheses, std::span<const std::string> references) {
  return corpus_bleu_score(hypotheses, references).score;
}

}  // namespace cis2
