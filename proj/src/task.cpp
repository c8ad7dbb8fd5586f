#include "cis2/task.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "cis2/parallel.hpp"
#include "cis2/random.hpp"
#include "cis2/text.hpp"

namespace cis2 {

namespace {

std::string prefix(const StoryEntry& entry) { return std::to_string(entry.dimension) + ":"; }

// "{D}:" followed by the parts, each preceded by one space.
std::string with_prefix(const StoryEntry& entry, const std::vector<std::string>& parts) {
  std::string out = prefix(entry);
  for (const auto& p : parts) {
    out += ' ';
    out += p;
  }
  return out;
}

std::string marked(const std::string& x) { return "* " + x + " *"; }

}  // namespace

std::string_view task_name(TaskKind task) {
  switch (task) {
    case TaskKind::kOriginal: return "original";
    case TaskKind::kHistory: return "history";
    case TaskKind::kMaskX: return "mask-x";
    case TaskKind::kHistoryX: return "history-x";
    case TaskKind::kCis2: return "cis2";
  }
  return "unknown";
}

std::optional<TaskKind> parse_task_kind(std::string_view name) {
  for (auto t : {TaskKind::kOriginal, TaskKind::kHistory, TaskKind::kMaskX, TaskKind::kHistoryX, TaskKind::kCis2}) {
    if (task_name(t) == name) return t;
  }
  return std::nullopt;
}

std::string render_input(const StoryEntry& entry, TaskKind task, const RenderOptions& options) {
  validate(entry);
  const auto x = static_cast<std::size_t>(entry.selected_index);
  std::vector<std::string> parts;
  for (std::size_t i = 0; i < x; ++i) parts.push_back(entry.sentences[i]);

  switch (task) {
    case TaskKind::kOriginal:
    case TaskKind::kCis2:
      parts.push_back(marked(entry.sentences[x]));
      for (std::size_t i = x + 1; i < kStoryLength; ++i) parts.push_back(entry.sentences[i]);
      return with_prefix(entry, parts);
    case TaskKind::kHistory:
      return with_prefix(entry, parts);
    case TaskKind::kHistoryX:
      parts.push_back(marked(entry.sentences[x]));
      return with_prefix(entry, parts);
    case TaskKind::kMaskX: {
      parts.emplace_back(kMaskToken);
      for (std::size_t i = x + 1; i < kStoryLength; ++i) parts.push_back(entry.sentences[i]);
      if (options.mask_x_dimension_prefix) return with_prefix(entry, parts);
      return join(parts, " ");
    }
  }
  return {};
}

std::string render_target(const StoryEntry& entry, TaskKind task, const ConversionContext* conversion) {
  if (task == TaskKind::kCis2) {
    if (!conversion) throw InvalidEntryError("CIS2 targets need a conversion context");
    return convert_gold_entry(entry, *conversion).label.str();
  }
  return entry.gold_specific.text() + std::string(kRuleSeparator) + entry.gold_general.text();
}

std::size_t DropReport::total() const {
  std::size_t n = 0;
  for (const auto& [reason, count] : counts) n += count;
  return n;
}

BuildResult build_dataset(const std::vector<StoryEntry>& entries, TaskKind task, const BuildOptions& options) {
  struct Outcome {
    std::optional<TaskSample> sample;
    std::string_view drop_reason;
    std::optional<EntryError> error;
  };

  auto outcomes = ordered_map(entries.size(), options.threads, [&](std::size_t i) {
    const auto& entry = entries[i];
    Outcome o;
    if (task == TaskKind::kHistoryX && entry.selected_index == kStoryLength - 1) {
      o.drop_reason = kDropXIsLast;
      return o;
    }
    TaskSample sample;
    sample.entry_id = entry.entry_id;
    sample.task = task;
    sample.dimension = entry.dimension;
    try {
      sample.input_text = render_input(entry, task, options.render);
    } catch (const Error& e) {
      o.drop_reason = kDropRenderError;
      o.error = EntryError::from(e, i + 1);
      return o;
    }
    try {
      sample.target_text = render_target(entry, task, options.conversion);
    } catch (const Error& e) {
      o.drop_reason = task == TaskKind::kCis2 ? kDropConversionError : kDropRenderError;
      o.error = EntryError::from(e, i + 1);
      return o;
    }
    o.sample = std::move(sample);
    return o;
  });

  BuildResult result;
  for (auto& o : outcomes) {
    if (o.sample) {
      result.samples.push_back(std::move(*o.sample));
      continue;
    }
    ++result.drops.counts[std::string(o.drop_reason)];
    if (o.error) result.drops.errors.push_back(std::move(*o.error));
  }
  return result;
}

Split split_dataset(const std::vector<StoryEntry>& entries, double dev_fraction, std::uint64_t seed) {
  const std::size_t n = entries.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[uniform_below(rng, i)]);
  const auto dev_count = static_cast<std::size_t>(std::llround(std::clamp(dev_fraction, 0.0, 1.0) * n));
  std::vector<bool> is_dev(n, false);
  for (std::size_t k = 0; k < dev_count; ++k) is_dev[order[k]] = true;

  Split split;
  for (std::size_t i = 0; i < n; ++i) (is_dev[i] ? split.dev : split.train).push_back(entries[i]);
  return split;
}

}  // namespace cis2
