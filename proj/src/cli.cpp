#include "cis2/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "cis2/bleu.hpp"
#include "cis2/convert.hpp"
#include "cis2/corpus_io.hpp"
#include "cis2/error.hpp"
#include "cis2/evaluation.hpp"
#include "cis2/label.hpp"
#include "cis2/parallel.hpp"
#include "cis2/similarity.hpp"
#include "cis2/task.hpp"
#include "cis2/text.hpp"

namespace cis2::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr std::string_view kUnparseable = "<unparseable>";

// Options shared across subcommands plus everything the subcommands read.
struct RunConfig {
  unsigned threads = 1;
  unsigned long long seed = kDefaultSeed;
  bool strict = false;

  std::string input;
  std::string output;
  std::string relation_map;
  std::string vocabulary_file;

  // import
  std::vector<std::string> columns;
  std::string column_map_file;
  double match_threshold = kDefaultMatchThreshold;

  // build-task
  std::string task;
  std::string format;
  bool mask_x_no_dimension = false;
  std::string report_path;

  // convert
  std::string similarity = "token-f1";
  std::string embeddings;
  std::optional<double> min_similarity;
  std::string predictions;

  // eval-bleu / eval-cis2
  std::string gold;
  std::string part = "both";
  std::string model = "model";
  std::string predicted;
  std::string reference;
  std::string entries;

  // split
  double dev_fraction = 0.1;
  std::string train_output;
  std::string dev_output;
};

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path.empty() || path == "-") return;
    file_.open(path, std::ios::binary);
    if (!file_) throw IoError("cannot open " + path + " for writing");
    stream_ = &file_;
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return in;
}

void log_errors(std::ostream& err, const std::vector<EntryError>& errors) {
  for (const auto& e : errors) err << "record " << e.record << ": " << e.message << '\n';
}

RelationVocabulary make_vocabulary(const RunConfig& cfg, const DimensionRelationMap* map) {
  auto vocabulary = RelationVocabulary::defaults();
  if (map) {
    for (const auto& t : map->distinct()) vocabulary.add(t);
  }
  if (!cfg.vocabulary_file.empty()) {
    auto in = open_input(cfg.vocabulary_file);
    for (const auto& line : read_lines(in)) {
      auto t = trim(line);
      if (!t.empty() && t.front() != '#') vocabulary.add(RelationToken(std::string(t)));
    }
  }
  return vocabulary;
}

std::optional<DimensionRelationMap> make_relation_map(const std::string& spec) {
  if (spec.empty() || spec == "none") return std::nullopt;
  if (spec == "causes-enables") return DimensionRelationMap();
  if (spec == "glucose") return DimensionRelationMap::glucose();
  if (spec == "dimension-tokens") return DimensionRelationMap::dimension_tokens();
  if (!std::filesystem::exists(spec)) {
    throw UsageError("--relation-map: \"" + spec + "\" is neither a preset nor an existing file");
  }
  return DimensionRelationMap::from_pairs(read_key_value_file(spec));
}

std::vector<StoryEntry> load_entries(const std::string& path, const RelationVocabulary& vocabulary,
                                     const RunConfig& cfg, std::vector<EntryError>& errors) {
  auto in = open_input(path);
  auto result = read_entries(in, vocabulary, cfg.strict);
  errors.insert(errors.end(), result.errors.begin(), result.errors.end());
  return std::move(result.entries);
}

std::unique_ptr<SimilarityBackend> make_backend(const RunConfig& cfg, const std::vector<StoryEntry>& entries) {
  const auto kind = parse_similarity_kind(cfg.similarity);
  if (!kind) throw UsageError("--similarity must be token-f1, tfidf or embedding");
  switch (*kind) {
    case SimilarityKind::kTokenF1:
      return std::make_unique<TokenF1Similarity>();
    case SimilarityKind::kTfidfCosine: {
      std::vector<std::string> sentences;
      for (const auto& e : entries) sentences.insert(sentences.end(), e.sentences.begin(), e.sentences.end());
      return std::make_unique<TfidfCosineSimilarity>(fit_idf(sentences));
    }
    case SimilarityKind::kEmbeddingCosine: {
      if (cfg.embeddings.empty()) throw UsageError("--similarity embedding requires --embeddings");
      auto table = std::make_shared<const EmbeddingTable>(load_embedding_table(std::filesystem::path(cfg.embeddings)));
      return std::make_unique<EmbeddingCosineSimilarity>(std::move(table));
    }
  }
  return nullptr;
}

int finish(std::ostream& err, const std::vector<EntryError>& errors) {
  log_errors(err, errors);
  return errors.empty() ? kExitOk : kExitDataError;
}

int cmd_import(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::map<std::string, std::string> pairs;
  if (!cfg.column_map_file.empty()) pairs = read_key_value_file(cfg.column_map_file);
  for (const auto& [k, v] : parse_key_values(cfg.columns)) pairs[k] = v;

  ImportOptions options;
  options.columns = ColumnMap::from_pairs(pairs);
  auto map = make_relation_map(cfg.relation_map);
  options.vocabulary = make_vocabulary(cfg, map ? &*map : nullptr);
  options.match_threshold = cfg.match_threshold;
  options.threads = cfg.threads;
  options.strict = cfg.strict;

  auto in = open_input(cfg.input);
  auto result = import_csv(in, options);
  Output o(cfg.output, out);
  write_entries(*o, result.entries);
  err << "imported " << result.entries.size() << " of " << result.records << " records\n";
  return finish(err, result.errors);
}

Json sample_to_json(const TaskSample& s) {
  Json j;
  j["entry_id"] = s.entry_id;
  j["task"] = task_name(s.task);
  j["input_text"] = s.input_text;
  j["target_text"] = s.target_text;
  j["dimension"] = s.dimension;
  return j;
}

std::string tsv_field(std::string s) {
  for (char& c : s) {
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

int cmd_build_task(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto task = parse_task_kind(cfg.task);
  if (!task) throw UsageError("--task must be original, history, mask-x, history-x or cis2");
  auto map = make_relation_map(cfg.relation_map);
  const auto vocabulary = make_vocabulary(cfg, map ? &*map : nullptr);

  std::vector<EntryError> errors;
  const auto entries = load_entries(cfg.input, vocabulary, cfg, errors);

  std::unique_ptr<SimilarityBackend> backend;
  ConversionContext context;
  BuildOptions options;
  options.threads = cfg.threads;
  options.render.mask_x_dimension_prefix = !cfg.mask_x_no_dimension;
  if (*task == TaskKind::kCis2) {
    backend = make_backend(cfg, entries);
    context.backend = backend.get();
    context.vocabulary = vocabulary;
    context.relation_map = map ? &*map : nullptr;
    context.min_similarity = cfg.min_similarity;
    options.conversion = &context;
  }

  auto result = build_dataset(entries, *task, options);
  Output o(cfg.output, out);
  for (const auto& s : result.samples) {
    if (cfg.format == "tsv") {
      *o << tsv_field(s.input_text) << '\t' << tsv_field(s.target_text) << '\n';
    } else {
      *o << dump_line(sample_to_json(s)) << '\n';
    }
  }

  Json report;
  report["task"] = task_name(*task);
  report["input"] = entries.size();
  report["output"] = result.samples.size();
  report["dropped"] = Json::object();
  for (const auto& [reason, n] : result.drops.counts) report["dropped"][reason] = n;
  err << "drop report: " << dump_line(report) << '\n';
  if (!cfg.report_path.empty()) {
    Output r(cfg.report_path, out);
    *r << dump_line(report) << '\n';
  }
  log_errors(err, result.drops.errors);
  return finish(err, errors);
}

Json conversion_to_json(const std::string& entry_id, const ConversionResult& r) {
  Json j;
  j["entry_id"] = entry_id;
  j["label"] = r.label.str();
  j["x_index"] = r.x_index;
  j["y_index"] = r.y_index;
  Json scores = Json::object();
  for (std::size_t i = 0; i < r.candidate_scores.size(); ++i) {
    if (r.candidate_scores[i]) scores[std::to_string(i)] = *r.candidate_scores[i];
  }
  j["scores"] = scores;
  return j;
}

int cmd_convert(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto map = make_relation_map(cfg.relation_map);
  const auto vocabulary = make_vocabulary(cfg, map ? &*map : nullptr);
  std::vector<EntryError> errors;
  const auto entries = load_entries(cfg.input, vocabulary, cfg, errors);

  std::vector<std::string> predictions;
  const bool from_predictions = !cfg.predictions.empty();
  if (from_predictions) {
    auto in = open_input(cfg.predictions);
    predictions = read_lines(in);
    if (predictions.size() != entries.size()) throw LengthMismatchError(predictions.size(), entries.size());
  }

  auto backend = make_backend(cfg, entries);
  ConversionContext context;
  context.backend = backend.get();
  context.vocabulary = vocabulary;
  context.relation_map = map ? &*map : nullptr;
  context.min_similarity = cfg.min_similarity;

  struct Outcome {
    std::optional<ConversionResult> result;
    std::optional<EntryError> error;
    bool unparseable = false;
  };
  auto outcomes = ordered_map(entries.size(), cfg.threads, [&](std::size_t i) {
    Outcome o;
    try {
      o.result = from_predictions ? convert_prediction(entries[i], predictions[i], context)
                                  : convert_gold_entry(entries[i], context);
    } catch (const Error& e) {
      if (cfg.strict && !from_predictions) throw;
      o.error = EntryError::from(e, i + 1);
      o.unparseable = from_predictions;
    }
    return o;
  });

  Output o(cfg.output, out);
  std::size_t unparseable = 0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& oc = outcomes[i];
    if (oc.unparseable) ++unparseable;
    if (cfg.format == "labels") {
      *o << (oc.result ? oc.result->label.str() : std::string(kUnparseable)) << '\n';
      continue;
    }
    if (oc.result) {
      *o << dump_line(conversion_to_json(entries[i].entry_id, *oc.result)) << '\n';
    } else {
      Json j;
      j["entry_id"] = entries[i].entry_id;
      j["label"] = nullptr;
      j["error"] = oc.error->kind;
      *o << dump_line(j) << '\n';
    }
  }

  err << "converted " << (entries.size() - unparseable) << " of " << entries.size() << " entries";
  if (from_predictions) err << ", " << unparseable << " unparseable predictions";
  err << '\n';
  for (const auto& oc : outcomes) {
    if (oc.error && !oc.unparseable) errors.push_back(*oc.error);
  }
  return finish(err, errors);
}

// Label files are either one label per line or conversion JSON-lines.
std::vector<std::optional<Cis2Label>> read_label_file(const std::string& path) {
  auto in = open_input(path);
  std::vector<std::optional<Cis2Label>> labels;
  for (const auto& line : read_lines(in)) {
    auto t = trim(line);
    std::optional<std::string> text;
    if (!t.empty() && t.front() == '{') {
      Json j;
      try {
        j = Json::parse(t);
      } catch (const Json::parse_error& e) {
        throw FormatError(labels.size() + 1, e.what());
      }
      if (j.contains("label") && j["label"].is_string()) text = j["label"].get<std::string>();
    } else {
      text = std::string(t);
    }
    std::optional<Cis2Label> label;
    if (text) {
      try {
        label = parse_label(*text);
      } catch (const Error&) {
      }
    }
    labels.push_back(std::move(label));
  }
  return labels;
}

int cmd_eval_cis2(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto predicted = read_label_file(cfg.predicted);
  const auto reference_raw = read_label_file(cfg.reference);
  std::vector<Cis2Label> reference;
  std::vector<EntryError> errors;
  for (std::size_t i = 0; i < reference_raw.size(); ++i) {
    if (!reference_raw[i]) {
      errors.push_back({i + 1, "", "LabelSyntaxError", "reference label on line " + std::to_string(i + 1) +
                                                          " does not parse"});
      continue;
    }
    reference.push_back(*reference_raw[i]);
  }
  if (!errors.empty()) return finish(err, errors);

  std::vector<int> dimensions;
  if (!cfg.entries.empty()) {
    auto map = make_relation_map(cfg.relation_map);
    const auto entries = load_entries(cfg.entries, make_vocabulary(cfg, map ? &*map : nullptr), cfg, errors);
    for (const auto& e : entries) dimensions.push_back(e.dimension);
    if (!errors.empty()) return finish(err, errors);
  }

  const auto result = exact_match_accuracy(predicted, reference, dimensions);
  Output o(cfg.output, out);
  if (cfg.format == "table") {
    *o << format_dimension_table(cfg.model, result.report, true);
  } else {
    Json j;
    j["accuracy"] = result.accuracy;
    j["n"] = reference.size();
    j["unparseable_count"] = result.report.unparseable_count;
    j["report"] = report_to_json(result.report);
    *o << dump_line(j) << '\n';
  }
  return kExitOk;
}

int cmd_eval_bleu(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto map = make_relation_map(cfg.relation_map);
  const auto vocabulary = make_vocabulary(cfg, map ? &*map : nullptr);
  auto pred_in = open_input(cfg.predictions);
  const auto hypotheses = read_lines(pred_in);

  // Gold is either task samples (reference = target_text) or canonical
  // entries (reference = rendered ORIGINAL target).
  std::vector<GenerationSample> samples;
  std::vector<EntryError> errors;
  auto gold_in = open_input(cfg.gold);
  const auto lines = read_lines(gold_in);
  std::size_t n = 0;
  for (const auto& line : lines) {
    ++n;
    if (trim(line).empty()) continue;
    try {
      Json j;
      try {
        j = Json::parse(line);
      } catch (const Json::parse_error& e) {
        throw FormatError(n, e.what());
      }
      if (j.contains("target_text")) {
        if (j.value("task", "") == task_name(TaskKind::kCis2)) {
          throw InvalidEntryError("CIS2 samples are scored with eval-cis2");
        }
        samples.push_back({j.at("dimension").get<int>(), j.at("target_text").get<std::string>(), {}});
      } else {
        const auto entry = entry_from_json(j, vocabulary);
        samples.push_back({entry.dimension, render_target(entry, TaskKind::kOriginal), {}});
      }
    } catch (const Json::exception& e) {
      errors.push_back({n, "", "FormatError", e.what()});
    } catch (const Error& e) {
      if (cfg.strict) throw;
      errors.push_back(EntryError::from(e, n));
    }
  }
  if (!errors.empty()) return finish(err, errors);
  if (samples.size() != hypotheses.size()) throw LengthMismatchError(hypotheses.size(), samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) samples[i].hypothesis = hypotheses[i];

  const bool want_specific = cfg.part != "general";
  const bool want_general = cfg.part != "specific";
  EvalReport specific;
  EvalReport general;
  if (want_specific) specific = evaluate_generation(samples, RulePart::kSpecific, cfg.threads);
  if (want_general) general = evaluate_generation(samples, RulePart::kGeneral, cfg.threads);

  Output o(cfg.output, out);
  if (cfg.format == "table") {
    *o << format_generation_table(cfg.model, specific, general);
    if (want_specific) *o << '\n' << format_dimension_table("specific", specific, false);
    if (want_general) *o << '\n' << format_dimension_table("general", general, false);
  } else {
    Json j;
    if (want_specific) j["specific"] = report_to_json(specific);
    if (want_general) j["general"] = report_to_json(general);
    *o << dump_line(j) << '\n';
  }
  return kExitOk;
}

int cmd_baseline(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto map = make_relation_map(cfg.relation_map);
  std::vector<EntryError> errors;
  const auto entries = load_entries(cfg.input, make_vocabulary(cfg, map ? &*map : nullptr), cfg, errors);
  const auto labels = random_baseline(entries, cfg.seed, map ? &*map : nullptr);
  Output o(cfg.output, out);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (cfg.format == "jsonl") {
      Json j;
      j["entry_id"] = entries[i].entry_id;
      j["label"] = labels[i].str();
      *o << dump_line(j) << '\n';
    } else {
      *o << labels[i].str() << '\n';
    }
  }
  return finish(err, errors);
}

int cmd_enumerate(const RunConfig& cfg, std::ostream& out) {
  auto map = make_relation_map(cfg.relation_map.empty() ? "dimension-tokens" : cfg.relation_map);
  const auto relations = map ? map->distinct() : DimensionRelationMap().distinct();
  Output o(cfg.output, out);
  for (const auto& label : enumerate_label_space(relations)) *o << label.str() << '\n';
  return kExitOk;
}

int cmd_split(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto map = make_relation_map(cfg.relation_map);
  std::vector<EntryError> errors;
  const auto entries = load_entries(cfg.input, make_vocabulary(cfg, map ? &*map : nullptr), cfg, errors);
  const auto split = split_dataset(entries, cfg.dev_fraction, cfg.seed);
  {
    Output train(cfg.train_output, out);
    write_entries(*train, split.train);
  }
  Output dev(cfg.dev_output, out);
  write_entries(*dev, split.dev);
  err << "train " << split.train.size() << ", dev " << split.dev.size() << '\n';
  return finish(err, errors);
}

void add_output(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("-o,--output", cfg.output, "Output path (default: stdout)");
}

void add_relation_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--relation-map", cfg.relation_map,
                  "Dimension->relation mapping: causes-enables, glucose, dimension-tokens, or a file of d=surface lines")
      ->envname("CIS2_RELATION_MAP");
  sub->add_option("--vocabulary", cfg.vocabulary_file, "Extra relation connectives, one per line")
      ->check(CLI::ExistingFile);
}

void add_similarity_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--similarity", cfg.similarity, "Similarity backend")
      ->check(CLI::IsMember({"token-f1", "tfidf", "embedding"}));
  sub->add_option("--embeddings", cfg.embeddings, "Embedding table (JSON-lines) for --similarity embedding")
      ->envname("CIS2_EMBEDDINGS")
      ->check(CLI::ExistingFile);
  sub->add_option("--min-similarity", cfg.min_similarity, "Reject conversions whose best candidate scores lower");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"GLUCOSE / CIS2 corpus toolkit"};
  app.name("cis2");
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "Seed for every random draw")->capture_default_str();
  app.add_flag("--strict", cfg.strict, "Stop at the first bad record");

  auto* import = app.add_subcommand("import", "CSV -> canonical JSON-lines");
  import->add_option("-i,--input", cfg.input, "CSV file")->required()->check(CLI::ExistingFile);
  import->add_option("--columns", cfg.columns, "Column map entries, e.g. story=story_text");
  import->add_option("--column-map", cfg.column_map_file, "File of key=value column mappings")
      ->check(CLI::ExistingFile);
  import->add_option("--match-threshold", cfg.match_threshold, "Token-F1 floor for locating X")
      ->capture_default_str();
  add_relation_options(import, cfg);
  add_output(import, cfg);

  auto* build = app.add_subcommand("build-task", "Render task samples");
  build->add_option("-i,--input", cfg.input, "Canonical entries")->required()->check(CLI::ExistingFile);
  build->add_option("--task", cfg.task, "original, history, mask-x, history-x or cis2")
      ->required()
      ->check(CLI::IsMember({"original", "history", "mask-x", "history-x", "cis2"}));
  build->add_option("--format", cfg.format, "jsonl or tsv")->check(CLI::IsMember({"jsonl", "tsv"}));
  build->add_flag("--mask-x-no-dimension", cfg.mask_x_no_dimension, "Omit the dimension prefix for mask-x");
  build->add_option("--report", cfg.report_path, "Also write the drop report here");
  add_similarity_options(build, cfg);
  add_relation_options(build, cfg);
  add_output(build, cfg);

  auto* convert = app.add_subcommand("convert", "Gold entries or model predictions -> CIS2 labels");
  convert->add_option("-i,--input", cfg.input, "Canonical entries")->required()->check(CLI::ExistingFile);
  convert->add_option("--predictions", cfg.predictions, "Model outputs, one per line, aligned with --input")
      ->check(CLI::ExistingFile);
  convert->add_option("--format", cfg.format, "jsonl or labels")->check(CLI::IsMember({"jsonl", "labels"}));
  add_similarity_options(convert, cfg);
  add_relation_options(convert, cfg);
  add_output(convert, cfg);

  auto* bleu = app.add_subcommand("eval-bleu", "Per-dimension corpus BLEU of generated rules");
  bleu->add_option("--gold", cfg.gold, "Task samples or canonical entries")->required()->check(CLI::ExistingFile);
  bleu->add_option("--predictions", cfg.predictions, "Model outputs, one per line")
      ->required()
      ->check(CLI::ExistingFile);
  bleu->add_option("--part", cfg.part, "specific, general or both")
      ->check(CLI::IsMember({"specific", "general", "both"}));
  bleu->add_option("--format", cfg.format, "json or table")->check(CLI::IsMember({"json", "table"}));
  bleu->add_option("--model", cfg.model, "Row name in the table");
  add_relation_options(bleu, cfg);
  add_output(bleu, cfg);

  auto* cis2 = app.add_subcommand("eval-cis2", "Exact-match accuracy of CIS2 labels");
  cis2->add_option("--predicted", cfg.predicted, "Predicted labels")->required()->check(CLI::ExistingFile);
  cis2->add_option("--reference", cfg.reference, "Reference labels")->required()->check(CLI::ExistingFile);
  cis2->add_option("--entries", cfg.entries, "Canonical entries, for the per-dimension breakdown")
      ->check(CLI::ExistingFile);
  cis2->add_option("--format", cfg.format, "json or table")->check(CLI::IsMember({"json", "table"}));
  cis2->add_option("--model", cfg.model, "Row name in the table");
  add_relation_options(cis2, cfg);
  add_output(cis2, cfg);

  auto* baseline = app.add_subcommand("baseline", "Random sentence-selection baseline labels");
  baseline->add_option("-i,--input", cfg.input, "Canonical entries")->required()->check(CLI::ExistingFile);
  baseline->add_option("--format", cfg.format, "labels or jsonl")->check(CLI::IsMember({"labels", "jsonl"}));
  add_relation_options(baseline, cfg);
  add_output(baseline, cfg);

  auto* enumerate = app.add_subcommand("enumerate-labels", "Print the label space");
  add_relation_options(enumerate, cfg);
  add_output(enumerate, cfg);

  auto* split = app.add_subcommand("split", "Seeded train/dev split");
  split->add_option("-i,--input", cfg.input, "Canonical entries")->required()->check(CLI::ExistingFile);
  split->add_option("--dev-fraction", cfg.dev_fraction, "Share of entries sent to dev")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  split->add_option("--train-output", cfg.train_output, "Train entries")->required();
  split->add_option("--dev-output", cfg.dev_output, "Dev entries")->required();
  add_relation_options(split, cfg);

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.emplace_back("cis2");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*import) return cmd_import(cfg, out, err);
    if (*build) {
      if (cfg.format.empty()) cfg.format = "jsonl";
      return cmd_build_task(cfg, out, err);
    }
    if (*convert) {
      if (cfg.format.empty()) cfg.format = "jsonl";
      return cmd_convert(cfg, out, err);
    }
    if (*bleu) {
      if (cfg.format.empty()) cfg.format = "json";
      return cmd_eval_bleu(cfg, out, err);
    }
    if (*cis2) {
      if (cfg.format.empty()) cfg.format = "json";
      return cmd_eval_cis2(cfg, out, err);
    }
    if (*baseline) {
      if (cfg.format.empty()) cfg.format = "labels";
      return cmd_baseline(cfg, out, err);
    }
    if (*enumerate) return cmd_enumerate(cfg, out);
    if (*split) return cmd_split(cfg, out, err);
  } catch (const UsageError& e) {
    const auto selected = app.get_subcommands();
    err << "usage error: " << e.what() << "\n\n" << (selected.empty() ? app.help() : selected.front()->help());
    return kExitUsage;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kExitDataError;
  }
  return kExitUsage;
}

}  // namespace cis2::cli
