#include "cis2/text.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>

namespace cis2 {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_whitespace(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    std::size_t j = i;
    while (j < s.size() && !is_space(s[j])) ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string join(std::span<const std::string> parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string collapse_whitespace(std::string_view s) {
  auto words = split_whitespace(s);
  return join(words, " ");
}

std::string normalize_for_match(std::string_view s) {
  std::string stripped;
  stripped.reserve(s.size());
  for (char c : s) {
    auto u = static_cast<unsigned char>(c);
    if (u < 0x80 && std::ispunct(u)) continue;
    stripped.push_back(u < 0x80 ? static_cast<char>(std::tolower(u)) : c);
  }
  return collapse_whitespace(stripped);
}

std::vector<std::string> match_tokens(std::string_view s) {
  return split_whitespace(normalize_for_match(s));
}

double token_f1(std::span<const std::string> a, std::span<const std::string> b) {
  if (a.empty() && b.empty()) return 1.0;
  if (a.empty() || b.empty()) return 0.0;
  std::unordered_map<std::string_view, int> counts;
  for (const auto& t : a) ++counts[t];
  std::size_t overlap = 0;
  for (const auto& t : b) {
    auto it = counts.find(t);
    if (it != counts.end() && it->second > 0) {
      --it->second;
      ++overlap;
    }
  }
  if (overlap == 0) return 0.0;
  // 2PR/(P+R) with P=o/|a|, R=o/|b| reduces to 2o/(|a|+|b|), which is
  // symmetric bit-for-bit.
  return 2.0 * static_cast<double>(overlap) / static_cast<double>(a.size() + b.size());
}

double token_f1(std::string_view a, std::string_view b) {
  auto ta = match_tokens(a);
  auto tb = match_tokens(b);
  return token_f1(ta, tb);
}

}  // namespace cis2
