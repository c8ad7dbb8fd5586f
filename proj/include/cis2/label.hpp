#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cis2/story.hpp"

namespace cis2 {

// Sentence-selection label "<s_a> REL <s_b>" with a, b in [0,4], a != b.
struct Cis2Label {
  int a = 0;
  int b = 1;
  RelationToken relation;

  std::string str() const;

  friend bool operator==(const Cis2Label&, const Cis2Label&) = default;
};

// Every label over `relations` (duplicates ignored): relation-major, then a,
// then b. 20 labels per distinct relation.
std::vector<Cis2Label> enumerate_label_space(std::span<const RelationToken> relations);

// Accepts the canonical form with optional surrounding whitespace. Throws
// LabelSyntaxError, IndexOutOfRangeError or SelfLoopError. When
// `vocabulary` is given the relation must belong to it.
Cis2Label parse_label(std::string_view text, const RelationVocabulary* vocabulary = nullptr);

}  // namespace cis2
