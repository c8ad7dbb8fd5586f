#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cis2/label.hpp"
#include "cis2/similarity.hpp"
#include "cis2/story.hpp"

namespace cis2 {

struct ConversionContext {
  const SimilarityBackend* backend = nullptr;
  RelationVocabulary vocabulary = RelationVocabulary::defaults();
  // When set, the label relation is the dimension's mapped surface instead
  // of the rule's connective.
  const DimensionRelationMap* relation_map = nullptr;
  // Reject conversions whose best candidate scores below this (off by default).
  std::optional<double> min_similarity;
};

struct ConversionResult {
  Cis2Label label;
  int x_index = 0;
  int y_index = 0;
  // Score of every non-X sentence, keyed by index; X's slot is empty.
  std::array<std::optional<double>, kStoryLength> candidate_scores;
};

// Picks the non-X story sentence most similar to `statement`; ties go to the
// lowest index.
ConversionResult match_statement(const StoryEntry& entry, const SpecificRule& rule, std::string_view statement,
                                 const ConversionContext& context);

ConversionResult convert_gold_entry(const StoryEntry& entry, const ConversionContext& context);

// `predicted_output` is "specific ** general" or a bare specific rule. Throws
// NoRelationError / AmbiguousRelationError when the rule cannot be split.
ConversionResult convert_prediction(const StoryEntry& entry, std::string_view predicted_output,
                                    const ConversionContext& context);

// Text before the first " ** ", or all of it.
std::string_view specific_part(std::string_view output);

// Relation and X slot as the conversion would set them, with Y chosen by the
// caller.
Cis2Label label_for(const StoryEntry& entry, const SpecificRule& rule, int y_index, const ConversionContext& context);

}  // namespace cis2
