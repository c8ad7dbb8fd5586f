#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cis2 {

// ASCII whitespace handling only; story text is UTF-8 but every separator the
// toolkit cares about is ASCII.
bool is_space(char c);
std::string_view trim(std::string_view s);
std::string collapse_whitespace(std::string_view s);
std::vector<std::string> split_whitespace(std::string_view s);

std::string join(std::span<const std::string> parts, std::string_view sep);

// Matching normal form: lowercase, ASCII punctuation removed, whitespace
// collapsed to single spaces, trimmed.
std::string normalize_for_match(std::string_view s);
std::vector<std::string> match_tokens(std::string_view s);

// Unigram F1 over multisets of normalized tokens. Two strings that both
// normalize to nothing score 1.
double token_f1(std::span<const std::string> a, std::span<const std::string> b);
double token_f1(std::string_view a, std::string_view b);

}  // namespace cis2
