#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cis2/convert.hpp"
#include "cis2/corpus_io.hpp"
#include "cis2/label.hpp"
#include "cis2/story.hpp"

namespace cis2 {

// Per-dimension scores plus count-weighted group averages. BLEU scores are in
// [0, 100]; accuracies in [0, 1].
struct EvalReport {
  std::map<int, double> per_dimension;
  std::map<int, std::size_t> n_entries;
  std::optional<double> avg_all;   // weighted by n_entries
  std::optional<double> avg_1_5;
  std::optional<double> avg_6_10;
  std::optional<double> macro_all;  // unweighted mean over present dimensions
  std::size_t unparseable_count = 0;

  // Fills the averages from per_dimension / n_entries.
  void aggregate();
};

Json report_to_json(const EvalReport& report);

enum class RulePart { kSpecific, kGeneral };

// Splits "specific ** general" on the first " ** ". Without a separator the
// whole text is the specific part and the general part is empty; the
// returned flag is false in that case.
struct SplitOutput {
  std::string specific;
  std::string general;
  bool has_separator = true;
};
SplitOutput split_rule_output(std::string_view text);

struct GenerationSample {
  int dimension = 1;
  std::string reference;   // gold "specific ** general"
  std::string hypothesis;  // model output
};

EvalReport evaluate_generation(std::span<const GenerationSample> samples, RulePart part, unsigned threads = 1);
EvalReport evaluate_generation(std::span<const StoryEntry> entries, std::span<const std::string> hypotheses,
                               RulePart part, unsigned threads = 1);

struct AccuracyResult {
  double accuracy = 0.0;
  EvalReport report;
};

// A disengaged prediction is unparseable and always counts as a mismatch.
// `dimensions`, when non-empty, must align with the lists and enables the
// per-dimension breakdown.
AccuracyResult exact_match_accuracy(std::span<const std::optional<Cis2Label>> predicted,
                                    std::span<const Cis2Label> reference, std::span<const int> dimensions = {});

// Y drawn uniformly from the four non-X sentences; X slot and relation as in
// the gold conversion.
std::vector<Cis2Label> random_baseline(std::span<const StoryEntry> entries, std::uint64_t seed,
                                       const DimensionRelationMap* relation_map = nullptr);

// Columns: spec, spec1-5, spec6-10, gen, gen1-5, gen6-10.
std::string format_generation_table(std::string_view model, const EvalReport& specific, const EvalReport& general);
// One row per dimension group with per-dimension columns.
std::string format_dimension_table(std::string_view title, const EvalReport& report, bool as_percent);

}  // namespace cis2
