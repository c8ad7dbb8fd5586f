#include "cis2/corpus_io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include "cis2/parallel.hpp"
#include "cis2/text.hpp"

namespace cis2 {

namespace {

struct PendingRecord {
  std::size_t record;
  Row row;
};

std::string substitute_dimension(const std::string& pattern, int d) {
  std::string out = pattern;
  const std::string needle = "{d}";
  for (auto pos = out.find(needle); pos != std::string::npos; pos = out.find(needle, pos)) {
    out.replace(pos, needle.size(), std::to_string(d));
  }
  return out;
}

SpecificRule rule_from_json(const Json& j, const RelationVocabulary& vocabulary) {
  if (j.is_string()) return parse_specific_rule(j.get<std::string>(), vocabulary);
  SpecificRule rule;
  rule.statement_1 = j.at("statement_1").get<std::string>();
  rule.relation = RelationToken(j.at("relation").get<std::string>());
  rule.statement_2 = j.at("statement_2").get<std::string>();
  return rule;
}

}  // namespace

bool CsvReader::next(std::vector<std::string>& fields) {
  fields.clear();
  int c = in_.get();
  if (c == EOF) return false;
  record_line_ = line_;
  std::string field;
  if (!bom_checked_) {
    bom_checked_ = true;
    // UTF-8 byte order mark; a partial match is ordinary field content.
    static constexpr unsigned char kBom[] = {0xEF, 0xBB, 0xBF};
    std::size_t matched = 0;
    while (matched < 3 && c == kBom[matched]) {
      field.push_back(static_cast<char>(c));
      ++matched;
      c = in_.get();
    }
    if (matched == 3) field.clear();
  }
  bool quoted = false;
  bool after_quote = false;
  while (true) {
    if (c == EOF) {
      if (quoted) throw FormatError(record_line_, "unterminated quoted field");
      break;
    }
    const char ch = static_cast<char>(c);
    if (quoted) {
      if (ch == '"') {
        if (in_.peek() == '"') {
          in_.get();
          field.push_back('"');
        } else {
          quoted = false;
          after_quote = true;
        }
      } else {
        if (ch == '\n') ++line_;
        field.push_back(ch);
      }
    } else if (ch == '"' && field.empty() && !after_quote) {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(std::move(field));
      field.clear();
      after_quote = false;
    } else if (ch == '\n') {
      ++line_;
      break;
    } else if (ch == '\r' && in_.peek() == '\n') {
      // CRLF; the '\n' ends the record on the next iteration
    } else {
      field.push_back(ch);
    }
    c = in_.get();
  }
  fields.push_back(std::move(field));
  return true;
}

std::map<std::string, std::string> parse_key_values(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string_view::npos) throw FormatError(n, "expected key=value");
    out[std::string(trim(t.substr(0, eq)))] = std::string(trim(t.substr(eq + 1)));
  }
  return out;
}

std::map<std::string, std::string> parse_key_values(const std::vector<std::string>& pairs) {
  std::map<std::string, std::string> out;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto eq = pairs[i].find('=');
    if (eq == std::string::npos) throw FormatError(i + 1, "expected key=value, got \"" + pairs[i] + "\"");
    out[std::string(trim(std::string_view(pairs[i]).substr(0, eq)))] =
        std::string(trim(std::string_view(pairs[i]).substr(eq + 1)));
  }
  return out;
}

std::map<std::string, std::string> read_key_value_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return parse_key_values(in);
}

Json rule_to_json(const SpecificRule& rule) {
  Json j;
  j["statement_1"] = rule.statement_1;
  j["relation"] = rule.relation.surface();
  j["statement_2"] = rule.statement_2;
  return j;
}

Json entry_to_json(const StoryEntry& entry) {
  Json j;
  j["entry_id"] = entry.entry_id;
  j["sentences"] = entry.sentences;
  j["selected_index"] = entry.selected_index;
  j["selected_text"] = entry.selected_text;
  j["dimension"] = entry.dimension;
  j["specific"] = rule_to_json(entry.gold_specific);
  j["general"] = rule_to_json(entry.gold_general);
  return j;
}

StoryEntry entry_from_json(const Json& j, const RelationVocabulary& vocabulary) {
  StoryEntry entry;
  try {
    entry.entry_id = j.at("entry_id").get<std::string>();
    const auto& sentences = j.at("sentences");
    if (!sentences.is_array() || sentences.size() != kStoryLength) {
      throw SentenceCountError(sentences.is_array() ? static_cast<int>(sentences.size()) : 0);
    }
    for (std::size_t i = 0; i < kStoryLength; ++i) entry.sentences[i] = sentences[i].get<std::string>();
    entry.selected_index = j.at("selected_index").get<int>();
    entry.dimension = j.at("dimension").get<int>();
    entry.gold_specific = rule_from_json(j.at("specific"), vocabulary);
    entry.gold_general = rule_from_json(j.at("general"), vocabulary);
    if (entry.selected_index >= 0 && entry.selected_index < kStoryLength) {
      entry.selected_text = j.contains("selected_text") ? j["selected_text"].get<std::string>() : entry.selected();
    }
    validate(entry);
  } catch (const Json::exception& e) {
    InvalidEntryError err(e.what());
    err.set_entry_id(entry.entry_id);
    throw err;
  } catch (Error& e) {
    e.set_entry_id(entry.entry_id);
    throw;
  }
  return entry;
}

std::string dump_line(const Json& j) { return j.dump(-1, ' ', false, Json::error_handler_t::replace); }

ImportResult import_csv(std::istream& in, const ImportOptions& options) {
  CsvReader reader(in);
  std::vector<std::string> header;
  if (!reader.next(header)) throw EmptyCorpusError("CSV input has no header");

  const ColumnMap& columns = options.columns;
  const bool wide = columns.specific.find("{d}") != std::string::npos;
  const bool has_id = std::find(header.begin(), header.end(), columns.id) != header.end();

  std::vector<PendingRecord> pending;
  ImportResult result;
  std::vector<std::string> fields;
  std::size_t data_row = 0;
  while (reader.next(fields)) {
    if (fields.size() == 1 && trim(fields[0]).empty()) continue;
    ++data_row;
    if (fields.size() != header.size()) {
      FormatError err(reader.line(), "expected " + std::to_string(header.size()) + " fields, found " +
                                         std::to_string(fields.size()));
      if (options.strict) throw err;
      result.errors.push_back(EntryError::from(err, data_row));
      continue;
    }
    Row row;
    for (std::size_t i = 0; i < header.size(); ++i) row[header[i]] = fields[i];
    if (!has_id) row[columns.id] = "row-" + std::to_string(data_row);

    if (!wide) {
      pending.push_back({data_row, std::move(row)});
      continue;
    }
    for (int d = 1; d <= kNumDimensions; ++d) {
      auto spec = row.find(substitute_dimension(columns.specific, d));
      if (spec == row.end()) continue;
      auto value = trim(spec->second);
      if (value.empty() || value == "escaped") continue;
      Row expanded = row;
      expanded[columns.id] = row[columns.id] + ":" + std::to_string(d);
      expanded[columns.dimension] = std::to_string(d);
      expanded[columns.specific] = std::string(value);
      auto gen = row.find(substitute_dimension(columns.general, d));
      expanded[columns.general] = gen == row.end() ? std::string() : gen->second;
      pending.push_back({data_row, std::move(expanded)});
    }
  }
  result.records = pending.size();

  struct Outcome {
    std::optional<StoryEntry> entry;
    std::optional<EntryError> error;
  };
  auto outcomes = ordered_map(pending.size(), options.threads, [&](std::size_t i) {
    Outcome o;
    try {
      o.entry = parse_glucose_record(pending[i].row, columns, options.vocabulary, options.match_threshold);
    } catch (const Error& e) {
      if (options.strict) throw;
      o.error = EntryError::from(e, pending[i].record);
    }
    return o;
  });
  for (auto& o : outcomes) {
    if (o.entry) {
      result.entries.push_back(std::move(*o.entry));
    } else {
      result.errors.push_back(std::move(*o.error));
    }
  }
  return result;
}

ReadResult read_entries(std::istream& in, const RelationVocabulary& vocabulary, bool strict) {
  ReadResult result;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (trim(line).empty()) continue;
    try {
      Json j;
      try {
        j = Json::parse(line);
      } catch (const Json::parse_error& e) {
        throw FormatError(n, e.what());
      }
      result.entries.push_back(entry_from_json(j, vocabulary));
    } catch (const Error& e) {
      if (strict) throw;
      result.errors.push_back(EntryError::from(e, n));
    }
  }
  return result;
}

std::vector<StoryEntry> read_entries_file(const std::filesystem::path& path, const RelationVocabulary& vocabulary) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return read_entries(in, vocabulary, true).entries;
}

void write_entries(std::ostream& out, const std::vector<StoryEntry>& entries) {
  for (const auto& e : entries) out << dump_line(entry_to_json(e)) << '\n';
}

std::vector<std::string> read_lines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

}  // namespace cis2
