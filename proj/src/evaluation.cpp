#include "cis2/evaluation.hpp"

#include <cstdio>
#include <random>

#include "cis2/bleu.hpp"
#include "cis2/error.hpp"
#include "cis2/parallel.hpp"
#include "cis2/random.hpp"
#include "cis2/task.hpp"

namespace cis2 {

namespace {

std::optional<double> weighted(const EvalReport& r, int lo, int hi) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& [d, score] : r.per_dimension) {
    if (d < lo || d > hi) continue;
    const auto count = r.n_entries.at(d);
    sum += score * static_cast<double>(count);
    n += count;
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

std::string cell(const std::optional<double>& v, bool as_percent) {
  if (!v) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", as_percent ? *v * 100.0 : *v);
  return buf;
}

std::string pad_left(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string pad_right(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

}  // namespace

void EvalReport::aggregate() {
  avg_all = weighted(*this, 1, kNumDimensions);
  avg_1_5 = weighted(*this, 1, 5);
  avg_6_10 = weighted(*this, 6, 10);
  if (per_dimension.empty()) {
    macro_all.reset();
  } else {
    double sum = 0.0;
    for (const auto& [d, score] : per_dimension) sum += score;
    macro_all = sum / static_cast<double>(per_dimension.size());
  }
}

Json report_to_json(const EvalReport& report) {
  Json j;
  Json per = Json::object();
  Json counts = Json::object();
  for (const auto& [d, score] : report.per_dimension) per[std::to_string(d)] = score;
  for (const auto& [d, n] : report.n_entries) counts[std::to_string(d)] = n;
  j["per_dimension"] = per;
  j["n_entries"] = counts;
  j["avg_all"] = optional_json(report.avg_all);
  j["avg_1_5"] = optional_json(report.avg_1_5);
  j["avg_6_10"] = optional_json(report.avg_6_10);
  j["macro_all"] = optional_json(report.macro_all);
  j["unparseable_count"] = report.unparseable_count;
  return j;
}

SplitOutput split_rule_output(std::string_view text) {
  const auto pos = text.find(kRuleSeparator);
  if (pos == std::string_view::npos) return {std::string(text), std::string(), false};
  return {std::string(text.substr(0, pos)), std::string(text.substr(pos + kRuleSeparator.size())), true};
}

EvalReport evaluate_generation(std::span<const GenerationSample> samples, RulePart part, unsigned threads) {
  std::map<int, std::vector<std::string>> hyps;
  std::map<int, std::vector<std::string>> refs;
  EvalReport report;
  for (const auto& s : samples) {
    if (s.dimension < 1 || s.dimension > kNumDimensions) throw DimensionRangeError(std::to_string(s.dimension));
    auto h = split_rule_output(s.hypothesis);
    auto r = split_rule_output(s.reference);
    if (!h.has_separator) ++report.unparseable_count;
    hyps[s.dimension].push_back(part == RulePart::kSpecific ? std::move(h.specific) : std::move(h.general));
    refs[s.dimension].push_back(part == RulePart::kSpecific ? std::move(r.specific) : std::move(r.general));
  }

  std::vector<int> dims;
  for (const auto& [d, list] : hyps) dims.push_back(d);
  auto scores = ordered_map(dims.size(), threads, [&](std::size_t i) {
    const int d = dims[i];
    return corpus_bleu(hyps[d], refs[d]);
  });
  for (std::size_t i = 0; i < dims.size(); ++i) {
    report.per_dimension[dims[i]] = scores[i];
    report.n_entries[dims[i]] = hyps[dims[i]].size();
  }
  report.aggregate();
  return report;
}

EvalReport evaluate_generation(std::span<const StoryEntry> entries, std::span<const std::string> hypotheses,
                               RulePart part, unsigned threads) {
  if (entries.size() != hypotheses.size()) throw LengthMismatchError(entries.size(), hypotheses.size());
  std::vector<GenerationSample> samples;
  samples.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    samples.push_back({entries[i].dimension, render_target(entries[i], TaskKind::kOriginal), hypotheses[i]});
  }
  return evaluate_generation(samples, part, threads);
}

AccuracyResult exact_match_accuracy(std::span<const std::optional<Cis2Label>> predicted,
                                    std::span<const Cis2Label> reference, std::span<const int> dimensions) {
  if (predicted.size() != reference.size()) throw LengthMismatchError(predicted.size(), reference.size());
  if (!dimensions.empty() && dimensions.size() != reference.size()) {
    throw LengthMismatchError(dimensions.size(), reference.size());
  }
  if (reference.empty()) throw EmptyCorpusError("no labels to compare");

  AccuracyResult result;
  std::map<int, std::size_t> hits;
  std::size_t total_hits = 0;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    const bool hit = predicted[i].has_value() && *predicted[i] == reference[i];
    if (!predicted[i]) ++result.report.unparseable_count;
    total_hits += hit;
    if (!dimensions.empty()) {
      hits[dimensions[i]] += hit;
      ++result.report.n_entries[dimensions[i]];
    }
  }
  result.accuracy = static_cast<double>(total_hits) / static_cast<double>(reference.size());
  for (const auto& [d, n] : result.report.n_entries) {
    result.report.per_dimension[d] = static_cast<double>(hits[d]) / static_cast<double>(n);
  }
  result.report.aggregate();
  if (dimensions.empty()) {
    result.report.avg_all = result.accuracy;
    result.report.macro_all = result.accuracy;
  }
  return result;
}

std::vector<Cis2Label> random_baseline(std::span<const StoryEntry> entries, std::uint64_t seed,
                                       const DimensionRelationMap* relation_map) {
  std::mt19937_64 rng(seed);
  ConversionContext context;
  context.relation_map = relation_map;
  std::vector<Cis2Label> out;
  out.reserve(entries.size());
  for (const auto& e : entries) {
    // Skip over X: draw k in [0,4) and shift past the selected index.
    auto y = static_cast<int>(uniform_below(rng, kStoryLength - 1));
    if (y >= e.selected_index) ++y;
    out.push_back(label_for(e, e.gold_specific, y, context));
  }
  return out;
}

std::string format_generation_table(std::string_view model, const EvalReport& specific, const EvalReport& general) {
  const std::vector<std::string> headers = {"spec", "spec1-5", "spec6-10", "gen", "gen1-5", "gen6-10"};
  const std::vector<std::optional<double>> values = {specific.avg_all, specific.avg_1_5, specific.avg_6_10,
                                                     general.avg_all,  general.avg_1_5,  general.avg_6_10};
  const std::size_t name_width = std::max<std::size_t>(5, model.size());
  std::string out = pad_right("model", name_width);
  for (const auto& h : headers) out += " | " + pad_left(h, 8);
  out += '\n';
  out += pad_right(std::string(model), name_width);
  for (const auto& v : values) out += " | " + pad_left(cell(v, false), 8);
  out += '\n';
  return out;
}

std::string format_dimension_table(std::string_view title, const EvalReport& report, bool as_percent) {
  const std::size_t name_width = std::max<std::size_t>(5, title.size());
  std::string header = pad_right("level", name_width) + " | " + pad_left("avg", 6);
  std::string row = pad_right(std::string(title), name_width) + " | " + pad_left(cell(report.avg_all, as_percent), 6);
  for (int d = 1; d <= kNumDimensions; ++d) {
    header += " | " + pad_left(std::to_string(d), 5);
    auto it = report.per_dimension.find(d);
    row += " | " + pad_left(cell(it == report.per_dimension.end() ? std::nullopt : std::optional(it->second),
                                 as_percent),
                            5);
  }
  return header + "\n" + row + "\n";
}

}  // namespace cis2
