#include "cis2/label.hpp"

#include <algorithm>

#include "cis2/error.hpp"
#include "cis2/text.hpp"

namespace cis2 {

namespace {

constexpr std::string_view kOpen = "<s_";

// Parses "<s_N>" occupying all of `token`.
long parse_index_token(std::string_view token) {
  if (token.size() < kOpen.size() + 2 || token.substr(0, kOpen.size()) != kOpen || token.back() != '>') {
    throw LabelSyntaxError("malformed sentence token \"" + std::string(token) + "\"");
  }
  auto digits = token.substr(kOpen.size(), token.size() - kOpen.size() - 1);
  if (!std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw LabelSyntaxError("non-numeric sentence index in \"" + std::string(token) + "\"");
  }
  if (digits.size() > 1 && digits.front() == '0') {
    throw LabelSyntaxError("leading zero in \"" + std::string(token) + "\"");
  }
  if (digits.size() > 6) throw IndexOutOfRangeError(999999);
  return std::stol(std::string(digits));
}

}  // namespace

std::string Cis2Label::str() const {
  return "<s_" + std::to_string(a) + "> " + relation.surface() + " <s_" + std::to_string(b) + ">";
}

std::vector<Cis2Label> enumerate_label_space(std::span<const RelationToken> relations) {
  std::vector<RelationToken> distinct;
  for (const auto& r : relations) {
    if (std::find(distinct.begin(), distinct.end(), r) == distinct.end()) distinct.push_back(r);
  }
  std::vector<Cis2Label> out;
  out.reserve(distinct.size() * kStoryLength * (kStoryLength - 1));
  for (const auto& r : distinct) {
    for (int a = 0; a < kStoryLength; ++a) {
      for (int b = 0; b < kStoryLength; ++b) {
        if (a != b) out.push_back({a, b, r});
      }
    }
  }
  return out;
}

Cis2Label parse_label(std::string_view text, const RelationVocabulary* vocabulary) {
  const auto t = trim(text);
  const auto first_end = t.find('>');
  if (first_end == std::string_view::npos) throw LabelSyntaxError("no sentence token");
  const auto last_open = t.rfind(kOpen);
  if (last_open == std::string_view::npos || last_open <= first_end) {
    throw LabelSyntaxError("expected two sentence tokens");
  }
  const auto head = t.substr(0, first_end + 1);
  const auto tail = t.substr(last_open);
  // Exactly one space on each side of the relation.
  if (first_end + 1 >= last_open || t[first_end + 1] != ' ' || t[last_open - 1] != ' ' ||
      last_open < first_end + 3) {
    throw LabelSyntaxError("tokens must be separated by single spaces");
  }
  const auto relation = t.substr(first_end + 2, last_open - first_end - 3);
  const long a = parse_index_token(head);
  const long b = parse_index_token(tail);
  if (!RelationToken::well_formed(relation)) {
    throw LabelSyntaxError("malformed relation \"" + std::string(relation) + "\"");
  }
  if (vocabulary && !vocabulary->contains(relation)) {
    throw LabelSyntaxError("relation \"" + std::string(relation) + "\" not in vocabulary");
  }
  if (a >= kStoryLength) throw IndexOutOfRangeError(a);
  if (b >= kStoryLength) throw IndexOutOfRangeError(b);
  if (a == b) throw SelfLoopError(static_cast<int>(a));
  return {static_cast<int>(a), static_cast<int>(b), RelationToken(std::string(relation))};
}

}  // namespace cis2
