#include "cis2/story.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include "cis2/error.hpp"
#include "cis2/text.hpp"

namespace cis2 {

namespace {

constexpr std::array<std::string_view, kNumDimensions> kDescriptions = {
    "Event that directly causes or enables X",
    "Emotion/basic human drive that motivates X",
    "Location state that enables X",
    "Possession state that enables X",
    "Other attributes enabling X",
    "Event that X directly causes or enables",
    "An emotion that is caused by X",
    "A change in location that X results in",
    "A change of possession that X results in",
    "Other changes in property that X results in",
};

bool is_terminator(char c) { return c == '.' || c == '!' || c == '?'; }
bool is_closer(char c) { return c == '"' || c == '\'' || c == ')'; }

std::string lookup(const Row& row, const std::string& column) {
  auto it = row.find(column);
  if (it == row.end()) throw MissingColumnError(column);
  return it->second;
}

int parse_dimension(std::string_view text) {
  auto t = trim(text);
  int value = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size() || value < 1 || value > kNumDimensions) {
    throw DimensionRangeError(t);
  }
  return value;
}

}  // namespace

RelationToken::RelationToken() : surface_(kCausesEnables) {}

RelationToken::RelationToken(std::string surface) : surface_(std::move(surface)) {
  if (!well_formed(surface_)) throw InvalidEntryError("malformed relation \"" + surface_ + "\"");
}

bool RelationToken::well_formed(std::string_view s) {
  return s.size() >= 3 && s.front() == '>' && s.back() == '>' && trim(s.substr(1, s.size() - 2)).size() == s.size() - 2 &&
         s.substr(1, s.size() - 2).find('>') == std::string_view::npos;
}

RelationVocabulary::RelationVocabulary(std::vector<RelationToken> tokens) {
  for (auto& t : tokens) add(t);
}

RelationVocabulary RelationVocabulary::defaults() {
  return RelationVocabulary({RelationToken(std::string(kCausesEnables)), RelationToken(">Motivates>"),
                             RelationToken(">Enables>"), RelationToken(">Causes>"), RelationToken(">Results in>")});
}

void RelationVocabulary::add(const RelationToken& token) {
  if (!contains(token.surface())) tokens_.push_back(token);
}

bool RelationVocabulary::contains(std::string_view surface) const {
  return std::any_of(tokens_.begin(), tokens_.end(), [&](const RelationToken& t) { return t.surface() == surface; });
}

std::string SpecificRule::text() const { return statement_1 + " " + relation.surface() + " " + statement_2; }

DimensionInfo DimensionInfo::of(int dimension) {
  if (dimension < 1 || dimension > kNumDimensions) throw DimensionRangeError(std::to_string(dimension));
  return {dimension, dimension >= 6, kDescriptions[static_cast<std::size_t>(dimension - 1)]};
}

bool x_is_first(int dimension) { return DimensionInfo::of(dimension).x_is_first; }

void validate(const StoryEntry& entry, double match_threshold) {
  for (std::size_t i = 0; i < entry.sentences.size(); ++i) {
    if (trim(entry.sentences[i]).empty()) {
      throw InvalidEntryError("sentence " + std::to_string(i) + " is empty");
    }
  }
  if (entry.selected_index < 0 || entry.selected_index >= kStoryLength) {
    throw InvalidEntryError("selected_index " + std::to_string(entry.selected_index) + " not in [0,4]");
  }
  if (entry.dimension < 1 || entry.dimension > kNumDimensions) {
    throw DimensionRangeError(std::to_string(entry.dimension));
  }
  for (const SpecificRule* rule : {&entry.gold_specific, &entry.gold_general}) {
    if (trim(rule->statement_1).empty() || trim(rule->statement_2).empty()) {
      throw InvalidEntryError("rule \"" + rule->text() + "\" has an empty statement");
    }
  }
  if (!entry.selected_text.empty() &&
      locate_selected_sentence(entry.sentences, entry.selected_text, match_threshold) != entry.selected_index) {
    throw InvalidEntryError("selected_text does not resolve to selected_index");
  }
}

DimensionRelationMap::DimensionRelationMap() = default;

DimensionRelationMap DimensionRelationMap::glucose() {
  DimensionRelationMap m;
  const std::array<std::string_view, kNumDimensions> surfaces = {
      ">Causes/Enables>", ">Motivates>", ">Enables>", ">Enables>", ">Enables>",
      ">Causes/Enables>", ">Causes>", ">Results in>", ">Results in>", ">Results in>"};
  for (int d = 1; d <= kNumDimensions; ++d) m.set(d, RelationToken(std::string(surfaces[d - 1])));
  return m;
}

DimensionRelationMap DimensionRelationMap::dimension_tokens() {
  DimensionRelationMap m;
  for (int d = 1; d <= kNumDimensions; ++d) m.set(d, RelationToken(">Dim" + std::to_string(d) + ">"));
  return m;
}

DimensionRelationMap DimensionRelationMap::from_pairs(const std::map<std::string, std::string>& pairs) {
  DimensionRelationMap m;
  for (const auto& [key, value] : pairs) m.set(parse_dimension(key), RelationToken(std::string(trim(value))));
  return m;
}

const RelationToken& DimensionRelationMap::at(int dimension) const {
  if (dimension < 1 || dimension > kNumDimensions) throw DimensionRangeError(std::to_string(dimension));
  return surfaces_[static_cast<std::size_t>(dimension - 1)];
}

void DimensionRelationMap::set(int dimension, RelationToken token) {
  if (dimension < 1 || dimension > kNumDimensions) throw DimensionRangeError(std::to_string(dimension));
  surfaces_[static_cast<std::size_t>(dimension - 1)] = std::move(token);
}

std::vector<RelationToken> DimensionRelationMap::distinct() const {
  std::vector<RelationToken> out;
  for (const auto& t : surfaces_) {
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  }
  return out;
}

Sentences split_story_into_sentences(std::string_view story_text) {
  std::vector<std::string> found;
  const std::string text = collapse_whitespace(story_text);
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (!is_terminator(text[i])) continue;
    std::size_t end = i + 1;
    while (end < text.size() && (is_terminator(text[end]) || is_closer(text[end]))) ++end;
    if (end < text.size() && text[end] == ' ') {
      found.push_back(text.substr(start, end - start));
      start = end + 1;
    }
    i = end - 1;
  }
  if (start < text.size()) found.push_back(text.substr(start));
  if (found.size() != kStoryLength) throw SentenceCountError(static_cast<int>(found.size()));
  Sentences out;
  std::move(found.begin(), found.end(), out.begin());
  return out;
}

SpecificRule parse_specific_rule(std::string_view rule_text, const RelationVocabulary& vocabulary) {
  struct Match {
    std::size_t pos;
    std::size_t len;
    const RelationToken* token;
  };
  std::vector<Match> matches;
  for (const auto& token : vocabulary.tokens()) {
    const auto& s = token.surface();
    for (auto pos = rule_text.find(s); pos != std::string_view::npos; pos = rule_text.find(s, pos + 1)) {
      matches.push_back({pos, s.size(), &token});
    }
  }
  if (matches.empty()) throw NoRelationError(rule_text);

  // Leftmost first, longest at a given position; drop matches nested inside
  // an earlier one.
  std::sort(matches.begin(), matches.end(), [](const Match& a, const Match& b) {
    return a.pos != b.pos ? a.pos < b.pos : a.len > b.len;
  });
  std::vector<Match> kept;
  std::size_t covered = 0;
  for (const auto& m : matches) {
    if (!kept.empty() && m.pos < covered) continue;
    kept.push_back(m);
    covered = m.pos + m.len;
  }
  const Match& first = kept.front();
  for (const auto& m : kept) {
    if (m.token->surface() != first.token->surface()) {
      throw AmbiguousRelationError(first.token->surface(), m.token->surface());
    }
  }

  SpecificRule rule;
  rule.statement_1 = std::string(trim(rule_text.substr(0, first.pos)));
  rule.statement_2 = std::string(trim(rule_text.substr(first.pos + first.len)));
  rule.relation = *first.token;
  return rule;
}

int locate_selected_sentence(std::span<const std::string, kStoryLength> sentences, std::string_view selected_text,
                             double threshold) {
  const std::string target = normalize_for_match(selected_text);
  for (int i = 0; i < kStoryLength; ++i) {
    if (normalize_for_match(sentences[static_cast<std::size_t>(i)]) == target) return i;
  }
  const auto target_tokens = split_whitespace(target);
  int best = -1;
  double best_score = -1.0;
  for (int i = 0; i < kStoryLength; ++i) {
    const double score = token_f1(match_tokens(sentences[static_cast<std::size_t>(i)]), target_tokens);
    if (score > best_score) {
      best_score = score;
      best = i;
    }
  }
  if (best_score < threshold) throw SelectedSentenceNotFound(selected_text, best_score);
  return best;
}

ColumnMap ColumnMap::from_pairs(const std::map<std::string, std::string>& pairs) {
  ColumnMap m;
  for (const auto& [key, value] : pairs) {
    if (key == "id") m.id = value;
    else if (key == "story") m.story = value;
    else if (key == "selected") m.selected = value;
    else if (key == "dimension") m.dimension = value;
    else if (key == "specific") m.specific = value;
    else if (key == "general") m.general = value;
    else throw InvalidEntryError("unknown column-map key \"" + key + "\"");
  }
  return m;
}

StoryEntry parse_glucose_record(const Row& row, const ColumnMap& columns, const RelationVocabulary& vocabulary,
                                double match_threshold) {
  StoryEntry entry;
  if (auto it = row.find(columns.id); it != row.end()) entry.entry_id = it->second;
  try {
    entry.sentences = split_story_into_sentences(lookup(row, columns.story));
    entry.selected_text = std::string(trim(lookup(row, columns.selected)));
    entry.selected_index = locate_selected_sentence(entry.sentences, entry.selected_text, match_threshold);
    entry.dimension = parse_dimension(lookup(row, columns.dimension));
    entry.gold_specific = parse_specific_rule(lookup(row, columns.specific), vocabulary);
    entry.gold_general = parse_specific_rule(lookup(row, columns.general), vocabulary);
    validate(entry, match_threshold);
  } catch (Error& e) {
    e.set_entry_id(entry.entry_id);
    throw;
  }
  return entry;
}

double statement_order_agreement(std::span<const StoryEntry> entries) {
  if (entries.empty()) return 1.0;
  std::size_t agree = 0;
  for (const auto& e : entries) {
    const auto x = match_tokens(e.selected());
    const double first = token_f1(match_tokens(e.gold_specific.statement_1), x);
    const double second = token_f1(match_tokens(e.gold_specific.statement_2), x);
    const bool predicted_first = x_is_first(e.dimension);
    if (first == second || (first > second) == predicted_first) ++agree;
  }
  return static_cast<double>(agree) / static_cast<double>(entries.size());
}

}  // namespace cis2
