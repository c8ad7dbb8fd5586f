#include "cis2/convert.hpp"

#include "cis2/error.hpp"
#include "cis2/text.hpp"

namespace cis2 {

Cis2Label label_for(const StoryEntry& entry, const SpecificRule& rule, int y_index, const ConversionContext& context) {
  Cis2Label label;
  label.relation = context.relation_map ? context.relation_map->at(entry.dimension) : rule.relation;
  if (x_is_first(entry.dimension)) {
    label.a = entry.selected_index;
    label.b = y_index;
  } else {
    label.a = y_index;
    label.b = entry.selected_index;
  }
  return label;
}

ConversionResult match_statement(const StoryEntry& entry, const SpecificRule& rule, std::string_view statement,
                                 const ConversionContext& context) {
  if (!context.backend) throw InvalidEntryError("no similarity backend configured");
  if (trim(statement).empty()) throw DegenerateStatementError("the non-X statement of \"" + rule.text() + "\" is empty");

  ConversionResult result;
  result.x_index = entry.selected_index;
  double best = 0.0;
  int best_index = -1;
  for (int i = 0; i < kStoryLength; ++i) {
    if (i == entry.selected_index) continue;
    const double score = context.backend->similarity(statement, entry.sentences[static_cast<std::size_t>(i)]);
    result.candidate_scores[static_cast<std::size_t>(i)] = score;
    if (best_index < 0 || score > best) {
      best = score;
      best_index = i;
    }
  }
  if (context.min_similarity && best < *context.min_similarity) throw LowSimilarityError(best, *context.min_similarity);
  result.y_index = best_index;
  result.label = label_for(entry, rule, best_index, context);
  return result;
}

namespace {

ConversionResult convert_rule(const StoryEntry& entry, const SpecificRule& rule, const ConversionContext& context) {
  const auto& y_statement = x_is_first(entry.dimension) ? rule.statement_2 : rule.statement_1;
  return match_statement(entry, rule, y_statement, context);
}

}  // namespace

ConversionResult convert_gold_entry(const StoryEntry& entry, const ConversionContext& context) {
  try {
    return convert_rule(entry, entry.gold_specific, context);
  } catch (Error& e) {
    e.set_entry_id(entry.entry_id);
    throw;
  }
}

std::string_view specific_part(std::string_view output) {
  constexpr std::string_view sep = " ** ";
  auto pos = output.find(sep);
  return pos == std::string_view::npos ? output : output.substr(0, pos);
}

ConversionResult convert_prediction(const StoryEntry& entry, std::string_view predicted_output,
                                    const ConversionContext& context) {
  try {
    const SpecificRule rule = parse_specific_rule(specific_part(predicted_output), context.vocabulary);
    return convert_rule(entry, rule, context);
  } catch (Error& e) {
    e.set_entry_id(entry.entry_id);
    throw;
  }
}

}  // namespace cis2
