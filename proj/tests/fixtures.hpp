#pragma once

// Shared test data: the two worked GLUCOSE entries and a seeded generator of
// well-formed synthetic entries.

#include <random>
#include <string>
#include <vector>

#include "cis2/story.hpp"

namespace cis2::testing {

inline const char* kFredStory =
    "Fred woke up late. He just missed his bus. He then went to his mom's room. His mom then drives him to school. "
    "He makes it to first class on time.";

inline const char* kToolsStory =
    "My mother told me to fix the car. I was unable to do this right away. I could not find my tools. "
    "I looked everywhere for them. It turns out they were stolen the night before.";

inline Row fred_row() {
  return {{"unique_id", "fred"},
          {"story", kFredStory},
          {"selected_sentence", "Fred woke up late."},
          {"dimension", "6"},
          {"specific", "Fred wakes up late >Causes/Enables> Fred misses his bus"},
          {"general", "Someone_A wakes up late >Causes/Enables> Someone_A misses Something_A"}};
}

inline Row tools_row() {
  return {{"unique_id", "tools"},
          {"story", kToolsStory},
          {"selected_sentence", "I could not find my tools."},
          {"dimension", "1"},
          {"specific", "They were stolen the night before >Causes/Enables> I could not find my tools"},
          {"general", "Something_A is stolen >Causes/Enables> Someone_A cannot find Something_A"}};
}

inline StoryEntry fred_entry() {
  return parse_glucose_record(fred_row(), ColumnMap{}, RelationVocabulary::defaults());
}

inline StoryEntry tools_entry() {
  return parse_glucose_record(tools_row(), ColumnMap{}, RelationVocabulary::defaults());
}

// Stories whose sentences use disjoint word pools, with a gold rule whose Y
// side copies most of one other sentence. Dimension, X and Y positions are
// uniform.
class SyntheticCorpus {
 public:
  explicit SyntheticCorpus(std::uint64_t seed) : rng_(seed) {}

  StoryEntry next(int id) {
    StoryEntry e;
    e.entry_id = "syn-" + std::to_string(id);
    for (int i = 0; i < kStoryLength; ++i) e.sentences[static_cast<std::size_t>(i)] = sentence(i);
    e.selected_index = pick(kStoryLength);
    e.selected_text = e.selected();
    e.dimension = 1 + pick(kNumDimensions);
    int y = pick(kStoryLength - 1);
    if (y >= e.selected_index) ++y;
    const std::string x_statement = statement(e.selected());
    const std::string y_statement = statement(e.sentences[static_cast<std::size_t>(y)]);
    const RelationToken rel{std::string(kCausesEnables)};
    if (e.dimension >= 6) {
      e.gold_specific = {x_statement, y_statement, rel};
    } else {
      e.gold_specific = {y_statement, x_statement, rel};
    }
    e.gold_general = {"Someone_A " + e.gold_specific.statement_1, "Someone_A " + e.gold_specific.statement_2, rel};
    gold_y_.push_back(y);
    return e;
  }

  std::vector<StoryEntry> take(int n) {
    std::vector<StoryEntry> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out.push_back(next(i));
    return out;
  }

  const std::vector<int>& gold_y() const { return gold_y_; }

  int pick(int n) { return static_cast<int>(rng_() % static_cast<std::uint64_t>(n)); }

 private:
  // Words in sentence slot i come from pool i, so slots never share tokens.
  std::string sentence(int slot) {
    std::string s;
    const int words = 4 + pick(4);
    for (int w = 0; w < words; ++w) {
      if (w) s += ' ';
      s += "w" + std::to_string(slot) + "x" + std::to_string(pick(40));
    }
    s[0] = 'W';
    return s + ".";
  }

  // Lowercased copy without the final period and with one word dropped.
  std::string statement(const std::string& sentence) {
    std::string body = sentence.substr(0, sentence.size() - 1);
    body[0] = 'w';
    auto first_space = body.find(' ');
    return body.substr(first_space + 1);
  }

  std::mt19937_64 rng_;
  std::vector<int> gold_y_;
};

}  // namespace cis2::testing
