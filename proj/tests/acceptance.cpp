// Acceptance suite: one PASS/FAIL line per criterion; exit status is the
// number of failures.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "cis2/bleu.hpp"
#include "cis2/cli.hpp"
#include "cis2/convert.hpp"
#include "cis2/corpus_io.hpp"
#include "cis2/evaluation.hpp"
#include "cis2/label.hpp"
#include "cis2/task.hpp"
#include "cis2/text.hpp"
#include "fixtures.hpp"

namespace {

using namespace cis2;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

constexpr double kWorkedExampleBudgetSec = 1.0;
constexpr double kBleuBudgetSec = 1.0;
constexpr double kBaselineBudgetSec = 10.0;
constexpr double kBleuTolerance = 0.01;
constexpr double kBaselineLow = 0.23;
constexpr double kBaselineHigh = 0.27;
constexpr int kBaselineEntries = 10000;
constexpr int kFuzzCount = 1000;
constexpr int kParallelEntries = 1000;
constexpr int kSelfConsistencyEntries = 2000;

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(4);
  ss << std::fixed << v;
  return ss.str();
}

Outcome worked_examples() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto fred = testing::fred_entry();
  const std::string want_input =
      "6: * Fred woke up late. * He just missed his bus. He then went to his mom's room. His mom then drives him to "
      "school. He makes it to first class on time.";
  const std::string want_target =
      "Fred wakes up late >Causes/Enables> Fred misses his bus ** Someone_A wakes up late >Causes/Enables> Someone_A "
      "misses Something_A";
  if (render_input(fred, TaskKind::kOriginal) != want_input) o.fail("ORIGINAL input differs");
  if (render_target(fred, TaskKind::kOriginal) != want_target) o.fail("ORIGINAL target differs");

  const auto tools = testing::tools_entry();
  TokenF1Similarity f1;
  std::vector<std::string> corpus(tools.sentences.begin(), tools.sentences.end());
  TfidfCosineSimilarity tfidf(fit_idf(corpus));
  for (const SimilarityBackend* b : std::initializer_list<const SimilarityBackend*>{&f1, &tfidf}) {
    ConversionContext ctx;
    ctx.backend = b;
    const auto label = convert_gold_entry(tools, ctx).label.str();
    if (label != "<s_4> >Causes/Enables> <s_2>") o.fail(std::string(similarity_name(b->kind())) + " gave " + label);
  }
  const double t = seconds_since(t0);
  if (t >= kWorkedExampleBudgetSec) o.fail("took " + fmt(t) + "s");
  if (o.pass) o.detail = "worked renderings byte-identical; tools entry -> <s_4> >Causes/Enables> <s_2> (token-f1, tfidf); " + fmt(t) + "s";
  return o;
}

// Near misses: one small edit of a valid label that leaves the label space.
std::string mutate(const std::string& s, std::mt19937_64& rng) {
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  std::string m = s;
  switch (pick(14)) {
    case 0: m[4] = static_cast<char>('5' + pick(5)); break;               // first index out of range
    case 1: m[m.size() - 2] = static_cast<char>('5' + pick(5)); break;    // second index out of range
    case 2: m[m.size() - 2] = m[4]; break;                                // self loop
    case 3: m.erase(5, 1); break;                                         // drop '>' of first token
    case 4: m.insert(6, " "); break;                                      // double space
    case 5: m.erase(m.find(' '), 1); break;                               // missing space
    case 6: m.insert(3, "0"); break;                                      // leading zero
    case 7: m[1] = 'S'; break;                                            // wrong token case
    case 8: m += " <s_1>"; break;                                         // trailing junk
    case 9: m.replace(m.find(">Dim") + 1, 3, "dim"); break;               // relation not in vocabulary
    case 10: m.replace(m.find(">Dim"), 4, ">Dim1"); break;                // >Dim1N> style relation
    case 11: m.erase(m.find(">Dim") + 1, m.find('>', m.find(">Dim") + 1) - m.find(">Dim") - 1); break;  // ">>"
    case 12: m.insert(pick(m.size() + 1), 1, "<>_ x"[pick(5)]); break;    // stray character
    default: m.erase(pick(m.size()), 1); break;                           // deleted character
  }
  return m;
}

Outcome label_space() {
  Outcome o;
  const auto relations = DimensionRelationMap::dimension_tokens().distinct();
  const RelationVocabulary vocab(relations);
  const auto labels = enumerate_label_space(relations);
  std::set<std::string> space;
  for (const auto& l : labels) space.insert(l.str());
  if (labels.size() != 200 || space.size() != 200) o.fail(std::to_string(space.size()) + " distinct labels");

  for (const auto& l : labels) {
    try {
      if (!(parse_label(l.str(), &vocab) == l)) o.fail("round trip changed " + l.str());
    } catch (const Error& e) {
      o.fail("rejected valid " + l.str() + ": " + e.what());
    }
  }

  std::mt19937_64 rng(20220522);
  int rejected = 0;
  int generated = 0;
  while (generated < kFuzzCount) {
    const auto& base = labels[rng() % labels.size()].str();
    auto m = mutate(base, rng);
    // A mutation can land back inside the space; only true near misses count.
    if (space.count(std::string(trim(m)))) continue;
    ++generated;
    try {
      parse_label(m, &vocab);
      o.fail("accepted near miss \"" + m + "\"");
    } catch (const Error&) {
      ++rejected;
    }
  }
  if (o.pass) o.detail = "200 distinct labels, all accepted; " + std::to_string(rejected) + "/" + std::to_string(kFuzzCount) + " near misses rejected";
  return o;
}

Outcome bleu_oracle() {
  Outcome o;
  std::ifstream in(std::string(CIS2_TEST_DATA_DIR) + "/bleu_oracle.json");
  if (!in) {
    o.fail("oracle file missing");
    return o;
  }
  const auto oracle = Json::parse(in);
  const auto t0 = Clock::now();
  std::vector<std::string> hyps;
  std::vector<std::string> refs;
  double worst = 0.0;
  for (const auto& p : oracle["pairs"]) {
    hyps.push_back(p["hyp"].get<std::string>());
    refs.push_back(p["ref"].get<std::string>());
    const double got = corpus_bleu(std::vector<std::string>{hyps.back()}, std::vector<std::string>{refs.back()});
    worst = std::max(worst, std::abs(got - p["bleu"].get<double>()));
  }
  const double pooled = corpus_bleu(hyps, refs);
  const double pooled_diff = std::abs(pooled - oracle["corpus_bleu"].get<double>());
  const double t = seconds_since(t0);
  if (hyps.size() != 50) o.fail(std::to_string(hyps.size()) + " pairs in oracle");
  if (worst > kBleuTolerance) o.fail("max per-pair |diff| " + fmt(worst));
  if (pooled_diff > kBleuTolerance) o.fail("pooled |diff| " + fmt(pooled_diff));
  if (t >= kBleuBudgetSec) o.fail("took " + fmt(t) + "s");
  if (o.pass) {
    o.detail = "50 pairs, max |diff| " + std::to_string(worst) + ", pooled " + fmt(pooled) + " (|diff| " +
               std::to_string(pooled_diff) + "); " + fmt(t) + "s";
  }
  return o;
}

Outcome random_baseline_rate() {
  Outcome o;
  const auto t0 = Clock::now();
  testing::SyntheticCorpus gen(2022);
  const auto entries = gen.take(kBaselineEntries);
  TokenF1Similarity f1;
  ConversionContext ctx;
  ctx.backend = &f1;
  std::vector<Cis2Label> gold;
  gold.reserve(entries.size());
  for (const auto& e : entries) gold.push_back(convert_gold_entry(e, ctx).label);
  const auto predicted = random_baseline(entries, cli::kDefaultSeed);
  std::vector<std::optional<Cis2Label>> pred(predicted.begin(), predicted.end());
  const double acc = exact_match_accuracy(pred, gold).accuracy;
  const double t = seconds_since(t0);
  if (acc < kBaselineLow || acc > kBaselineHigh) o.fail("accuracy " + fmt(acc));
  if (t >= kBaselineBudgetSec) o.fail("took " + fmt(t) + "s");
  if (o.pass) o.detail = "accuracy " + fmt(acc) + " over " + std::to_string(kBaselineEntries) + " entries; " + fmt(t) + "s";
  return o;
}

Outcome drop_rule() {
  Outcome o;
  testing::SyntheticCorpus gen(99);
  const auto entries = gen.take(5000);
  std::size_t x_last = 0;
  for (const auto& e : entries) x_last += e.selected_index == kStoryLength - 1;
  TokenF1Similarity f1;
  ConversionContext ctx;
  ctx.backend = &f1;
  BuildOptions opt;
  opt.conversion = &ctx;
  for (auto task : {TaskKind::kOriginal, TaskKind::kHistory, TaskKind::kMaskX, TaskKind::kHistoryX, TaskKind::kCis2}) {
    const auto r = build_dataset(entries, task, opt);
    const std::size_t want = task == TaskKind::kHistoryX ? entries.size() - x_last : entries.size();
    if (r.samples.size() != want) {
      o.fail(std::string(task_name(task)) + " kept " + std::to_string(r.samples.size()) + ", want " + std::to_string(want));
    }
    if (task == TaskKind::kHistoryX && r.drops.counts != std::map<std::string, std::size_t>{{"x_is_last", x_last}}) {
      o.fail("history-x drop report mismatch");
    }
    for (const auto& s : r.samples) {
      if (task == TaskKind::kHistoryX && s.input_text.find("* ") == std::string::npos) o.fail("history-x sample without X");
    }
  }
  if (o.pass) {
    o.detail = std::to_string(entries.size()) + " entries, " + std::to_string(x_last) + " X-last; history-x kept " +
               std::to_string(entries.size() - x_last) + ", other tasks kept all";
  }
  return o;
}

Outcome self_consistency() {
  Outcome o;
  testing::SyntheticCorpus gen(31);
  auto entries = gen.take(kSelfConsistencyEntries);
  entries.push_back(testing::fred_entry());
  entries.push_back(testing::tools_entry());

  std::vector<std::string> corpus;
  for (const auto& e : entries) corpus.insert(corpus.end(), e.sentences.begin(), e.sentences.end());
  TokenF1Similarity f1;
  TfidfCosineSimilarity tfidf(fit_idf(corpus));
  const auto dims = DimensionRelationMap::dimension_tokens();
  std::string summary;
  for (const SimilarityBackend* b : std::initializer_list<const SimilarityBackend*>{&f1, &tfidf}) {
    for (const DimensionRelationMap* map : {static_cast<const DimensionRelationMap*>(nullptr), &dims}) {
      ConversionContext ctx;
      ctx.backend = b;
      ctx.relation_map = map;
      std::vector<Cis2Label> gold;
      std::vector<std::optional<Cis2Label>> pred;
      for (const auto& e : entries) {
        gold.push_back(convert_gold_entry(e, ctx).label);
        pred.push_back(convert_prediction(e, render_target(e, TaskKind::kOriginal), ctx).label);
      }
      const double acc = exact_match_accuracy(pred, gold).accuracy;
      if (acc != 1.0) o.fail(std::string(similarity_name(b->kind())) + " accuracy " + fmt(acc));
    }
  }
  if (o.pass) o.detail = "accuracy 1.0 on " + std::to_string(entries.size()) + " entries (token-f1, tfidf; rule and per-dimension relations)";
  return o;
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome parallel_determinism() {
  Outcome o;
  const fs::path dir = fs::temp_directory_path() / "cis2_acceptance_threads";
  fs::remove_all(dir);
  fs::create_directories(dir);

  testing::SyntheticCorpus gen(777);
  const auto entries = gen.take(kParallelEntries);
  {
    std::ofstream csv(dir / "corpus.csv", std::ios::binary);
    csv << "unique_id,story,selected_sentence,dimension,specific,general\n";
    for (const auto& e : entries) {
      csv << csv_quote(e.entry_id) << ',' << csv_quote(join(e.sentences, " ")) << ',' << csv_quote(e.selected_text)
          << ',' << e.dimension << ',' << csv_quote(e.gold_specific.text()) << ',' << csv_quote(e.gold_general.text())
          << '\n';
    }
    std::ofstream preds(dir / "predictions.txt", std::ios::binary);
    std::mt19937_64 rng(5);
    for (const auto& e : entries) {
      // Mix exact gold, perturbed rules and unparseable text.
      switch (rng() % 3) {
        case 0: preds << render_target(e, TaskKind::kOriginal) << '\n'; break;
        case 1: preds << e.gold_specific.statement_2 << " >Causes/Enables> " << e.gold_specific.statement_1 << " ** x\n"; break;
        default: preds << "no connective here\n"; break;
      }
    }
  }
  auto p = [&](const std::string& name) { return (dir / name).string(); };

  using Args = std::vector<std::string>;
  struct Pipeline {
    std::string name;
    Args args;
    std::vector<std::string> files;
  };
  auto make = [&](const std::string& threads) {
    const std::string t = threads;
    std::vector<Pipeline> v;
    v.push_back({"import", {"--threads", t, "import", "-i", p("corpus.csv"), "-o", p("entries." + t + ".jsonl")}, {"entries." + t + ".jsonl"}});
    for (const char* task : {"original", "history", "mask-x", "history-x", "cis2"}) {
      v.push_back({std::string("build-task ") + task,
                   {"--threads", t, "build-task", "--task", task, "-i", p("entries.1.jsonl")}, {}});
    }
    v.push_back({"build-task cis2 tfidf",
                 {"--threads", t, "build-task", "--task", "cis2", "--similarity", "tfidf", "-i", p("entries.1.jsonl")}, {}});
    v.push_back({"convert gold", {"--threads", t, "convert", "-i", p("entries.1.jsonl"), "-o", p("gold." + t + ".txt"), "--format", "labels"}, {"gold." + t + ".txt"}});
    v.push_back({"convert predictions",
                 {"--threads", t, "convert", "-i", p("entries.1.jsonl"), "--predictions", p("predictions.txt")}, {}});
    v.push_back({"eval-bleu", {"--threads", t, "eval-bleu", "--gold", p("entries.1.jsonl"), "--predictions", p("predictions.txt")}, {}});
    v.push_back({"eval-bleu table",
                 {"--threads", t, "eval-bleu", "--gold", p("entries.1.jsonl"), "--predictions", p("predictions.txt"), "--format", "table"}, {}});
    v.push_back({"baseline", {"--threads", t, "baseline", "-i", p("entries.1.jsonl"), "-o", p("baseline." + t + ".txt")}, {"baseline." + t + ".txt"}});
    v.push_back({"eval-cis2",
                 {"--threads", t, "eval-cis2", "--predicted", p("baseline.1.txt"), "--reference", p("gold.1.txt"), "--entries", p("entries.1.jsonl")}, {}});
    v.push_back({"split",
                 {"--threads", t, "split", "-i", p("entries.1.jsonl"), "--train-output", p("train." + t + ".jsonl"), "--dev-output", p("dev." + t + ".jsonl")},
                 {"train." + t + ".jsonl", "dev." + t + ".jsonl"}});
    v.push_back({"enumerate-labels", {"--threads", t, "enumerate-labels"}, {}});
    return v;
  };

  // Threads 1 runs first so the shared inputs (entries.1, gold.1, ...) exist.
  const auto one = make("1");
  const auto eight = make("8");
  std::size_t compared = 0;
  for (std::size_t i = 0; i < one.size(); ++i) {
    std::ostringstream out1, err1, out8, err8;
    const int c1 = cli::run(one[i].args, out1, err1);
    const int c8 = cli::run(eight[i].args, out8, err8);
    if (c1 != c8) o.fail(one[i].name + ": exit codes " + std::to_string(c1) + " vs " + std::to_string(c8));
    if (c1 != 0) o.fail(one[i].name + " exited " + std::to_string(c1) + ": " + err1.str().substr(0, 200));
    if (out1.str() != out8.str()) o.fail(one[i].name + ": stdout differs");
    if (err1.str() != err8.str()) o.fail(one[i].name + ": stderr differs");
    ++compared;
    for (std::size_t f = 0; f < one[i].files.size(); ++f) {
      const auto a = slurp(dir / one[i].files[f]);
      const auto b = slurp(dir / eight[i].files[f]);
      if (a.empty()) o.fail(one[i].name + ": empty output file");
      if (a != b) o.fail(one[i].name + ": " + one[i].files[f] + " differs");
      ++compared;
    }
  }
  fs::remove_all(dir);
  if (o.pass) o.detail = std::to_string(one.size()) + " pipelines on " + std::to_string(kParallelEntries) + " entries, " + std::to_string(compared) + " outputs byte-identical";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"worked-example fidelity", worked_examples},
      {"label space", label_space},
      {"BLEU oracle equivalence", bleu_oracle},
      {"random baseline", random_baseline_rate},
      {"drop-rule counts", drop_rule},
      {"self-consistency", self_consistency},
      {"determinism under parallelism", parallel_determinism},
  };
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
    failures += !o.pass;
  }
  return failures;
}
