#pragma once

#include <array>
#include <compare>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cis2 {

inline constexpr int kStoryLength = 5;
inline constexpr int kNumDimensions = 10;
inline constexpr double kDefaultMatchThreshold = 0.8;

using Sentences = std::array<std::string, kStoryLength>;

// The connective between the two statements of a rule, e.g. ">Causes/Enables>".
class RelationToken {
 public:
  RelationToken();
  explicit RelationToken(std::string surface);

  const std::string& surface() const noexcept { return surface_; }
  static bool well_formed(std::string_view surface);

  friend bool operator==(const RelationToken&, const RelationToken&) = default;
  friend auto operator<=>(const RelationToken&, const RelationToken&) = default;

 private:
  std::string surface_;
};

inline constexpr std::string_view kCausesEnables = ">Causes/Enables>";

class RelationVocabulary {
 public:
  RelationVocabulary() = default;
  explicit RelationVocabulary(std::vector<RelationToken> tokens);

  // >Causes/Enables>, >Motivates>, >Enables>, >Causes>, >Results in>
  static RelationVocabulary defaults();

  void add(const RelationToken& token);
  bool contains(std::string_view surface) const;
  const std::vector<RelationToken>& tokens() const noexcept { return tokens_; }

 private:
  std::vector<RelationToken> tokens_;
};

struct SpecificRule {
  std::string statement_1;
  std::string statement_2;
  RelationToken relation;

  // "statement_1 REL statement_2"
  std::string text() const;

  friend bool operator==(const SpecificRule&, const SpecificRule&) = default;
};

struct DimensionInfo {
  int dimension;
  bool x_is_first;
  std::string_view description;

  static DimensionInfo of(int dimension);
};

bool x_is_first(int dimension);

struct StoryEntry {
  std::string entry_id;
  Sentences sentences;
  int selected_index = 0;
  std::string selected_text;
  int dimension = 1;
  SpecificRule gold_specific;
  SpecificRule gold_general;

  const std::string& selected() const { return sentences[static_cast<std::size_t>(selected_index)]; }

  friend bool operator==(const StoryEntry&, const StoryEntry&) = default;
};

// Throws InvalidEntryError / DimensionRangeError when an invariant is broken.
void validate(const StoryEntry& entry, double match_threshold = kDefaultMatchThreshold);

// Per-dimension relation surface used when rendering labels.
class DimensionRelationMap {
 public:
  // Every dimension -> ">Causes/Enables>".
  DimensionRelationMap();

  // Surfaces as they appear in the public GLUCOSE release.
  static DimensionRelationMap glucose();
  // One distinct token per dimension, ">Dim1>" .. ">Dim10>"; spans the
  // full 200-label output space.
  static DimensionRelationMap dimension_tokens();
  // Keys "1".."10"; unmapped dimensions keep the default surface.
  static DimensionRelationMap from_pairs(const std::map<std::string, std::string>& pairs);

  const RelationToken& at(int dimension) const;
  void set(int dimension, RelationToken token);
  // Distinct surfaces in dimension order.
  std::vector<RelationToken> distinct() const;

 private:
  std::array<RelationToken, kNumDimensions> surfaces_;
};

// Splits after '.', '!' or '?' (plus any closing quote or bracket) that is
// followed by whitespace. Throws SentenceCountError unless exactly 5 result.
Sentences split_story_into_sentences(std::string_view story_text);

// Splits on the leftmost vocabulary connective.
SpecificRule parse_specific_rule(std::string_view rule_text, const RelationVocabulary& vocabulary);

int locate_selected_sentence(std::span<const std::string, kStoryLength> sentences, std::string_view selected_text,
                             double threshold = kDefaultMatchThreshold);

// Names of the source columns for each StoryEntry field.
struct ColumnMap {
  std::string id = "unique_id";
  std::string story = "story";
  std::string selected = "selected_sentence";
  std::string dimension = "dimension";
  std::string specific = "specific";
  std::string general = "general";

  // Keys: id, story, selected, dimension, specific, general.
  static ColumnMap from_pairs(const std::map<std::string, std::string>& pairs);
};

using Row = std::map<std::string, std::string, std::less<>>;

StoryEntry parse_glucose_record(const Row& row, const ColumnMap& columns, const RelationVocabulary& vocabulary,
                                double match_threshold = kDefaultMatchThreshold);

// Fraction of entries whose X sits on the side predicted by its dimension,
// judged by which rule statement is closer (token F1) to X. Ties count as
// agreement.
double statement_order_agreement(std::span<const StoryEntry> entries);

}  // namespace cis2
