#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cis2/convert.hpp"
#include "cis2/error.hpp"
#include "cis2/story.hpp"

namespace cis2 {

enum class TaskKind { kOriginal, kHistory, kMaskX, kHistoryX, kCis2 };

inline constexpr std::string_view kMaskToken = "<masked>";
inline constexpr std::string_view kRuleSeparator = " ** ";

// "original", "history", "mask-x", "history-x", "cis2"
std::string_view task_name(TaskKind task);
std::optional<TaskKind> parse_task_kind(std::string_view name);

struct TaskSample {
  std::string entry_id;
  TaskKind task = TaskKind::kOriginal;
  std::string input_text;
  std::string target_text;
  int dimension = 1;

  friend bool operator==(const TaskSample&, const TaskSample&) = default;
};

struct RenderOptions {
  bool mask_x_dimension_prefix = true;
};

std::string render_input(const StoryEntry& entry, TaskKind task, const RenderOptions& options = {});

// For CIS2 the label comes from the gold conversion and `conversion` must be
// set; other tasks render "specific ** general".
std::string render_target(const StoryEntry& entry, TaskKind task, const ConversionContext* conversion = nullptr);

struct DropReport {
  std::map<std::string, std::size_t> counts;  // reason -> entries dropped
  std::vector<EntryError> errors;

  std::size_t total() const;
};

inline constexpr std::string_view kDropXIsLast = "x_is_last";
inline constexpr std::string_view kDropConversionError = "conversion_error";
inline constexpr std::string_view kDropRenderError = "render_error";

struct BuildResult {
  std::vector<TaskSample> samples;
  DropReport drops;
};

struct BuildOptions {
  RenderOptions render;
  const ConversionContext* conversion = nullptr;  // required for CIS2
  unsigned threads = 1;
};

BuildResult build_dataset(const std::vector<StoryEntry>& entries, TaskKind task, const BuildOptions& options);

struct Split {
  std::vector<StoryEntry> train;
  std::vector<StoryEntry> dev;
};

// Seeded shuffle, then the first round(fraction * n) entries go to dev; both
// halves keep input order.
Split split_dataset(const std::vector<StoryEntry>& entries, double dev_fraction, std::uint64_t seed);

}  // namespace cis2
