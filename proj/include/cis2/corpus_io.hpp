#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "cis2/error.hpp"
#include "cis2/story.hpp"

namespace cis2 {

using Json = nlohmann::ordered_json;

// RFC 4180 reader: quoted fields, doubled quotes, embedded newlines. A
// leading UTF-8 byte order mark is skipped.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  // Reads the next record; false at end of input. Throws FormatError on an
  // unterminated quoted field.
  bool next(std::vector<std::string>& fields);
  // Physical line on which the last record started.
  std::size_t line() const noexcept { return record_line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 1;
  std::size_t record_line_ = 0;
  bool bom_checked_ = false;
};

// "key=value" lines; blank lines and '#' comments ignored.
std::map<std::string, std::string> parse_key_values(std::istream& in);
std::map<std::string, std::string> parse_key_values(const std::vector<std::string>& pairs);
std::map<std::string, std::string> read_key_value_file(const std::filesystem::path& path);

Json rule_to_json(const SpecificRule& rule);
Json entry_to_json(const StoryEntry& entry);
StoryEntry entry_from_json(const Json& j, const RelationVocabulary& vocabulary);

// Compact single-line dump that tolerates invalid UTF-8.
std::string dump_line(const Json& j);

struct ImportResult {
  std::vector<StoryEntry> entries;
  std::vector<EntryError> errors;
  std::size_t records = 0;
};

struct ImportOptions {
  ColumnMap columns;
  RelationVocabulary vocabulary = RelationVocabulary::defaults();
  double match_threshold = kDefaultMatchThreshold;
  unsigned threads = 1;
  bool strict = false;
};

// Imports a header-based CSV. When `columns.specific` contains "{d}" the
// file is read in wide layout: one entry per row per dimension whose
// specific cell is non-empty and not "escaped", with "{d}" substituted in
// the specific and general column names and ids suffixed ":d".
ImportResult import_csv(std::istream& in, const ImportOptions& options);

struct ReadResult {
  std::vector<StoryEntry> entries;
  std::vector<EntryError> errors;
};

// Canonical JSON-lines. With `strict` the first bad line throws.
ReadResult read_entries(std::istream& in, const RelationVocabulary& vocabulary, bool strict);
std::vector<StoryEntry> read_entries_file(const std::filesystem::path& path, const RelationVocabulary& vocabulary);
void write_entries(std::ostream& out, const std::vector<StoryEntry>& entries);

std::vector<std::string> read_lines(std::istream& in);

}  // namespace cis2
