// amrmeter: validate CheckList suites, score metrics per case and run the
// interpreted evaluation.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "amrmeter/alignment.h"
#include "amrmeter/embeddings.h"
#include "amrmeter/evaluate.h"
#include "amrmeter/metrics.h"
#include "amrmeter/report.h"
#include "amrmeter/suite.h"
#include "amrmeter/text_metrics.h"

namespace {

using namespace amrmeter;

constexpr int kExitOk = 0;
constexpr int kExitPartial = 1;
constexpr int kExitInvalid = 2;

struct RunConfig {
  std::string suite;
  std::vector<std::string> metrics;
  std::string static_emb;
  std::string ctx_emb;
  std::string align;
  std::string lexicon;
  std::string tau_rule = "score-percentile";
  uint64_t seed = 0;
  size_t threads = 0;
  std::string out;
  std::vector<std::string> formats;
  std::vector<std::string> extra_phenomena;
};

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> SplitList(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& item : raw) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (!part.empty()) out.push_back(part);
    }
  }
  return out;
}

std::vector<TestCase> Load(const RunConfig& cfg) {
  PhenomenonRegistry registry;
  for (const auto& p : SplitList(cfg.extra_phenomena)) registry.Add(p);
  return LoadSuite(cfg.suite, registry);
}

struct Resources {
  std::optional<StaticEmbeddingTable> table;
  std::optional<ContextualEmbeddingStore> store;
  std::optional<ExternalAlignments> alignments;
  std::optional<SynonymLexicon> lexicon;

  MetricResources View() const {
    return {table ? &*table : nullptr, store ? &*store : nullptr,
            alignments ? &*alignments : nullptr, lexicon ? &*lexicon : nullptr};
  }
};

// Loads only what the selected metrics can use, then checks that every
// metric's requirements are met.
std::vector<std::unique_ptr<Metric>> PrepareMetrics(const RunConfig& cfg, Resources& res) {
  const auto ids = SplitList(cfg.metrics);
  if (ids.empty()) throw InputError("no metrics selected (--metrics)");
  try {
    if (!cfg.static_emb.empty()) res.table = LoadStaticTable(cfg.static_emb);
    if (!cfg.ctx_emb.empty()) res.store = LoadContextualStore(cfg.ctx_emb);
    if (!cfg.align.empty()) res.alignments = LoadAlignments(cfg.align);
    if (!cfg.lexicon.empty()) res.lexicon = LoadSynonymLexicon(cfg.lexicon);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
  std::vector<std::unique_ptr<Metric>> metrics;
  std::string missing;
  for (const auto& id : ids) {
    try {
      metrics.push_back(MakeMetric(id, res.View()));
    } catch (const std::invalid_argument& e) {
      throw InputError(std::string(e.what()) + "; known metrics: " + [] {
        std::string all;
        for (const auto& k : KnownMetricIds()) all += (all.empty() ? "" : ", ") + k;
        return all;
      }());
    }
    for (const auto& flag : metrics.back()->MissingResources())
      missing += "\n  " + id + " requires " + flag;
  }
  if (!missing.empty()) throw InputError("missing resources:" + missing);
  return metrics;
}

std::vector<OutputFormat> Formats(const RunConfig& cfg) {
  std::vector<OutputFormat> out;
  for (const auto& f : SplitList(cfg.formats)) {
    auto parsed = ParseOutputFormat(f);
    if (!parsed) throw InputError("unknown format '" + f + "' (tsv, md, jsonl)");
    out.push_back(*parsed);
  }
  if (out.empty()) out.push_back(OutputFormat::kTsv);
  return out;
}

std::ofstream OpenOut(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  return out;
}

int RunValidate(const RunConfig& cfg) {
  const auto cases = Load(cfg);
  const SuiteStatistics stats = ValidateSuite(cases);
  std::printf("cases\t%zu\n", stats.total);
  std::printf("dataset\tphenomenon\tcount\tmean\tmedian\tstd\tstderr\n");
  auto line = [](Dataset d, const std::string& name, const GroupStatistics& g) {
    std::printf("%s\t%s\t%zu\t%.4f\t%.4f\t%.4f\t%.4f\n", std::string(DatasetName(d)).c_str(),
                name.c_str(), g.count, g.mean, g.median, g.std_dev, g.std_error);
  };
  for (const auto& [d, groups] : stats.groups) {
    for (const auto& [name, g] : groups) line(d, name, g);
    line(d, "Overall", stats.datasets.at(d));
  }
  return kExitOk;
}

int RunScore(const RunConfig& cfg) {
  const auto cases = Load(cfg);
  Resources res;
  const auto metrics = PrepareMetrics(cfg, res);
  const auto formats = Formats(cfg);
  std::vector<const Metric*> ptrs;
  for (const auto& m : metrics) ptrs.push_back(m.get());
  const ScoreTable table = ScoreCases(cases, ptrs, cfg.seed, cfg.threads);

  if (cfg.out.empty()) {
    WriteScoreRecords(cases, table, formats.front(), std::cout);
  } else {
    std::filesystem::create_directories(cfg.out);
    for (OutputFormat f : formats) {
      auto out = OpenOut(std::filesystem::path(cfg.out) /
                         ("scores." + std::string(OutputFormatExtension(f))));
      WriteScoreRecords(cases, table, f, out);
    }
  }
  int code = kExitOk;
  for (size_t m = 0; m < table.metric_ids.size(); ++m) {
    size_t failed = 0;
    std::string first;
    for (const auto& e : table.errors[m]) {
      if (e.empty()) continue;
      if (failed++ == 0) first = e;
    }
    if (failed > 0) {
      std::fprintf(stderr, "error: %s failed on %zu case(s): %s\n",
                   table.metric_ids[m].c_str(), failed, first.c_str());
      code = kExitPartial;
    }
  }
  return code;
}

int RunEvaluate(const RunConfig& cfg) {
  if (cfg.out.empty()) throw InputError("evaluate needs --out <directory>");
  const auto cases = Load(cfg);
  Resources res;
  const auto metrics = PrepareMetrics(cfg, res);
  const auto formats = Formats(cfg);
  EvaluationConfig ecfg;
  const auto rule = ParseTauRule(cfg.tau_rule);
  if (!rule)
    throw InputError("unknown tau rule '" + cfg.tau_rule +
                     "' (score-percentile, diff-percentile, zero)");
  ecfg.tau_rule = *rule;
  ecfg.seed = cfg.seed;
  ecfg.threads = cfg.threads;
  std::vector<const Metric*> ptrs;
  for (const auto& m : metrics) ptrs.push_back(m.get());
  const EvaluationReport report = Evaluate(cases, ptrs, ecfg);

  const std::filesystem::path dir(cfg.out);
  std::filesystem::create_directories(dir);
  for (OutputFormat f : formats) {
    auto out = OpenOut(dir / ("report." + std::string(OutputFormatExtension(f))));
    WriteReport(report, f, out);
  }
  {
    auto out = OpenOut(dir / "scores.jsonl");
    WriteScoreRecords(cases, report.raw, OutputFormat::kJsonl, out);
  }
  const std::filesystem::path phen_dir = dir / "phenomena";
  std::filesystem::create_directories(phen_dir);
  WritePhenomenonFiles(phen_dir, cases, report);

  for (const auto& f : report.failures) {
    std::fprintf(stderr, "error: %s failed on %zu case(s): %s\n", f.metric_id.c_str(),
                 f.failed_cases, f.message.c_str());
  }
  return report.failures.empty() ? kExitOk : kExitPartial;
}

void AddSuite(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--suite", cfg.suite, "CheckList suite file (JSONL or grouped JSON)")
      ->required();
  cmd->add_option("--extra-phenomena", cfg.extra_phenomena,
                  "Additional phenomenon names, comma separated");
}

void AddScoring(CLI::App* cmd, RunConfig& cfg) {
  AddSuite(cmd, cfg);
  cmd->add_option("--metrics", cfg.metrics, "Metric ids, comma separated")->required();
  cmd->add_option("--static-emb", cfg.static_emb, "Static word vectors (GloVe text format)");
  cmd->add_option("--ctx-emb", cfg.ctx_emb, "Contextual embedding store (JSONL)");
  cmd->add_option("--align", cfg.align, "JAMR-style alignment file");
  cmd->add_option("--lexicon", cfg.lexicon, "Synonym lexicon for meteor_lite");
  cmd->add_option("--seed", cfg.seed, "Seed for randomized search");
  cmd->add_option("--threads", cfg.threads, "Worker threads (0: hardware)");
  cmd->add_option("--out", cfg.out, "Output directory");
  cmd->add_option("--format", cfg.formats, "Output formats: tsv, md, jsonl");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AMR and text similarity metrics with a CheckList evaluation harness"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* validate = app.add_subcommand("validate", "Load a suite and print statistics");
  AddSuite(validate, cfg);
  auto* score = app.add_subcommand("score", "Write one score record per metric and case");
  AddScoring(score, cfg);
  auto* evaluate = app.add_subcommand("evaluate", "Run the evaluation and write reports");
  AddScoring(evaluate, cfg);
  evaluate->add_option("--tau-rule", cfg.tau_rule,
                       "Tie threshold rule: score-percentile, diff-percentile, zero");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (validate->parsed()) return RunValidate(cfg);
    if (score->parsed()) return RunScore(cfg);
    return RunEvaluate(cfg);
  } catch (const SuiteError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
  } catch (const InputError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
  }
  return kExitInvalid;
}
