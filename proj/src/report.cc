#include "amrmeter/report.h"

#include <cstdio>
#include <fstream>
#include <map>
#include <set>

#include "json.hpp"

namespace amrmeter {
namespace {

using nlohmann::ordered_json;

constexpr std::string_view kAnnGlobal = "Ann. Score (global)";
constexpr std::string_view kAnnGroup = "Ann. Score (group)";

std::string Fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string Opt(const std::optional<double>& v, int digits = 6) {
  return v ? Fixed(*v, digits) : "NA";
}

// Tabs and newlines would break the line-oriented formats.
std::string Flat(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  }
  return out;
}

ordered_json OptJson(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

std::vector<Dataset> DatasetsOf(const EvaluationReport& report) {
  std::set<Dataset> seen;
  for (const auto& a : report.annotation) seen.insert(a.dataset);
  return {seen.begin(), seen.end()};
}

std::vector<std::string> GroupsOf(const EvaluationReport& report, Dataset d) {
  std::vector<std::string> groups;
  for (const auto& a : report.annotation) {
    if (a.dataset == d) groups.push_back(a.phenomenon);
  }
  return groups;
}

}  // namespace

std::optional<OutputFormat> ParseOutputFormat(std::string_view name) {
  if (name == "tsv") return OutputFormat::kTsv;
  if (name == "md" || name == "markdown") return OutputFormat::kMarkdown;
  if (name == "jsonl") return OutputFormat::kJsonl;
  return std::nullopt;
}

std::string_view OutputFormatExtension(OutputFormat format) {
  switch (format) {
    case OutputFormat::kTsv:
      return "tsv";
    case OutputFormat::kMarkdown:
      return "md";
    case OutputFormat::kJsonl:
      return "jsonl";
  }
  return "tsv";
}

void WriteReportTsv(const EvaluationReport& report, std::ostream& out) {
  out << "dataset\tphenomenon\tmetric\tn\tavg\tmad\tranking\tspearman\ttau\n";
  for (const auto& row : report.rows) {
    double tau = 0.0;
    if (auto d = report.tau.find(row.dataset); d != report.tau.end()) {
      if (auto t = d->second.find(row.metric_id); t != d->second.end()) tau = t->second;
    }
    out << DatasetName(row.dataset) << '\t' << row.phenomenon << '\t' << row.metric_id << '\t'
        << row.count << '\t' << Fixed(row.avg) << '\t' << Fixed(row.mad) << '\t'
        << Opt(row.ranking) << '\t' << Opt(row.spearman) << '\t' << Fixed(tau) << '\n';
  }
  for (const auto& a : report.annotation) {
    out << DatasetName(a.dataset) << '\t' << a.phenomenon << '\t' << kAnnGlobal << '\t'
        << a.count << '\t' << Fixed(a.global_avg) << "\tNA\tNA\tNA\tNA\n";
    out << DatasetName(a.dataset) << '\t' << a.phenomenon << '\t' << kAnnGroup << '\t'
        << a.count << '\t' << Fixed(a.group_avg) << "\tNA\tNA\tNA\tNA\n";
  }
}

void WriteReportMarkdown(const EvaluationReport& report, std::ostream& out) {
  out << "# Evaluation report\n\n";
  for (const auto& [k, v] : report.metadata) out << "- " << k << ": " << v << "\n";
  for (Dataset d : DatasetsOf(report)) {
    const auto groups = GroupsOf(report, d);
    auto header = [&](std::string_view first) {
      out << "| " << first << " |";
      for (const auto& g : groups) out << " " << g << " |";
      out << "\n|---|";
      for (size_t i = 0; i < groups.size(); ++i) out << "---|";
      out << "\n";
    };

    out << "\n## " << DatasetName(d) << ": avg ± mad\n\n";
    header("metric");
    for (const auto& m : report.metric_ids) {
      out << "| " << m << " |";
      for (const auto& g : groups) {
        const ReportRow* row = report.Find(d, g, m);
        out << " " << (row ? Fixed(row->avg, 3) + " ± " + Fixed(row->mad, 2) : "NA") << " |";
      }
      out << "\n";
    }
    out << "| " << kAnnGlobal << " |";
    for (const auto& a : report.annotation) {
      if (a.dataset == d) out << " " << Fixed(a.global_avg, 3) << " |";
    }
    out << "\n| " << kAnnGroup << " |";
    for (const auto& a : report.annotation) {
      if (a.dataset == d) out << " " << Fixed(a.group_avg, 3) << " |";
    }
    out << "\n";

    out << "\n## " << DatasetName(d) << ": ranking score / Spearman\n\n";
    header("metric");
    for (const auto& m : report.metric_ids) {
      out << "| " << m << " |";
      for (const auto& g : groups) {
        const ReportRow* row = report.Find(d, g, m);
        out << " " << (row ? Opt(row->ranking, 3) + " / " + Opt(row->spearman, 3) : "NA")
            << " |";
      }
      out << "\n";
    }
  }
  if (!report.failures.empty()) {
    out << "\n## Failures\n\n";
    for (const auto& f : report.failures)
      out << "- " << f.metric_id << ": " << f.failed_cases << " case(s); " << Flat(f.message)
          << "\n";
  }
}

void WriteReportJsonl(const EvaluationReport& report, std::ostream& out) {
  ordered_json meta;
  meta["type"] = "metadata";
  for (const auto& [k, v] : report.metadata) meta[k] = v;
  ordered_json taus = ordered_json::object();
  for (const auto& [d, by_metric] : report.tau) {
    for (const auto& [m, t] : by_metric) taus[std::string(DatasetName(d))][m] = t;
  }
  meta["tau"] = taus;
  ordered_json configs = ordered_json::object();
  for (const auto& [m, cfg] : report.metric_config) {
    for (const auto& [k, v] : cfg) configs[m][k] = v;
  }
  meta["metric_config"] = configs;
  out << meta.dump() << "\n";
  for (const auto& row : report.rows) {
    ordered_json j;
    j["type"] = "row";
    j["dataset"] = DatasetName(row.dataset);
    j["phenomenon"] = row.phenomenon;
    j["metric"] = row.metric_id;
    j["n"] = row.count;
    j["avg"] = row.avg;
    j["mad"] = row.mad;
    j["ranking"] = OptJson(row.ranking);
    j["spearman"] = OptJson(row.spearman);
    out << j.dump() << "\n";
  }
  for (const auto& a : report.annotation) {
    ordered_json j;
    j["type"] = "annotation";
    j["dataset"] = DatasetName(a.dataset);
    j["phenomenon"] = a.phenomenon;
    j["n"] = a.count;
    j["global_avg"] = a.global_avg;
    j["group_avg"] = a.group_avg;
    out << j.dump() << "\n";
  }
  for (const auto& f : report.failures) {
    ordered_json j;
    j["type"] = "failure";
    j["metric"] = f.metric_id;
    j["failed_cases"] = f.failed_cases;
    j["message"] = f.message;
    out << j.dump() << "\n";
  }
}

void WriteReport(const EvaluationReport& report, OutputFormat format, std::ostream& out) {
  switch (format) {
    case OutputFormat::kTsv:
      WriteReportTsv(report, out);
      break;
    case OutputFormat::kMarkdown:
      WriteReportMarkdown(report, out);
      break;
    case OutputFormat::kJsonl:
      WriteReportJsonl(report, out);
      break;
  }
}

void WriteScoreRecords(std::span<const TestCase> cases, const ScoreTable& scores,
                       OutputFormat format, std::ostream& out) {
  if (format != OutputFormat::kJsonl)
    out << "metric\tid\tdataset\tphenomenon\tvalue\tcomponents\terror\n";
  for (size_t m = 0; m < scores.metric_ids.size(); ++m) {
    for (size_t c = 0; c < cases.size(); ++c) {
      const auto& score = scores.scores[m][c];
      if (format == OutputFormat::kJsonl) {
        ordered_json j;
        j["metric"] = scores.metric_ids[m];
        j["id"] = cases[c].id;
        j["dataset"] = DatasetName(cases[c].dataset);
        j["phenomenon"] = cases[c].phenomenon;
        j["value"] = score ? ordered_json(score->value) : ordered_json(nullptr);
        ordered_json comps = ordered_json::object();
        if (score) {
          for (const auto& [k, v] : score->components) comps[k] = v;
        }
        j["components"] = comps;
        if (!scores.errors[m][c].empty()) j["error"] = scores.errors[m][c];
        out << j.dump() << "\n";
        continue;
      }
      std::string comps;
      if (score) {
        for (const auto& [k, v] : score->components) {
          if (!comps.empty()) comps += ';';
          comps += k + "=" + Fixed(v);
        }
      }
      out << scores.metric_ids[m] << '\t' << cases[c].id << '\t'
          << DatasetName(cases[c].dataset) << '\t' << cases[c].phenomenon << '\t'
          << (score ? Fixed(score->value) : "NA") << '\t' << comps << '\t'
          << Flat(scores.errors[m][c]) << '\n';
    }
  }
}

std::vector<std::filesystem::path> WritePhenomenonFiles(const std::filesystem::path& dir,
                                                        std::span<const TestCase> cases,
                                                        const EvaluationReport& report) {
  std::map<std::pair<Dataset, std::string>, std::vector<size_t>> groups;
  for (size_t c = 0; c < cases.size(); ++c)
    groups[{cases[c].dataset, cases[c].phenomenon}].push_back(c);
  std::vector<std::filesystem::path> written;
  const ScoreTable& raw = report.raw;
  for (const auto& [key, members] : groups) {
    const auto path =
        dir / (std::string(DatasetName(key.first)) + "_" + key.second + ".txt");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "# " << DatasetName(key.first) << " " << key.second << " (" << members.size()
        << " cases)\n";
    out << "id\tsentence_a\tsentence_b\thuman";
    for (const auto& m : raw.metric_ids) out << '\t' << m;
    out << '\n';
    for (size_t c : members) {
      out << cases[c].id << '\t' << Flat(cases[c].sentence_a) << '\t'
          << Flat(cases[c].sentence_b) << '\t' << Fixed(cases[c].human_score, 2);
      for (size_t m = 0; m < raw.metric_ids.size(); ++m) {
        const auto& s = raw.scores[m][c];
        out << '\t' << (s ? Fixed(s->value) : "NA");
      }
      out << '\n';
    }
    written.push_back(path);
  }
  return written;
}

}  // namespace amrmeter
