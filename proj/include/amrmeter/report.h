#ifndef AMRMETER_REPORT_H_
#define AMRMETER_REPORT_H_

#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "amrmeter/evaluate.h"
#include "amrmeter/test_case.h"

namespace amrmeter {

enum class OutputFormat { kTsv, kMarkdown, kJsonl };

std::optional<OutputFormat> ParseOutputFormat(std::string_view name);
std::string_view OutputFormatExtension(OutputFormat format);

// One line per (dataset, group, metric) plus the annotation rows under the
// metric names "Ann. Score (global)" and "Ann. Score (group)".
void WriteReportTsv(const EvaluationReport& report, std::ostream& out);

// Per dataset: an "avg ± mad" table and a ranking / Spearman table with
// metrics as rows and phenomena as columns.
void WriteReportMarkdown(const EvaluationReport& report, std::ostream& out);

// A metadata record, then one record per row, annotation row and failure.
void WriteReportJsonl(const EvaluationReport& report, std::ostream& out);

void WriteReport(const EvaluationReport& report, OutputFormat format, std::ostream& out);

// One record per (metric, case): raw value and components, or the error.
// Ordered by metric, then case. Markdown falls back to TSV.
void WriteScoreRecords(std::span<const TestCase> cases, const ScoreTable& scores,
                       OutputFormat format, std::ostream& out);

// Writes "<DATASET>_<Phenomenon>.txt" into `dir`, listing each case with its
// sentences, human score and every metric's raw score. Returns the paths.
std::vector<std::filesystem::path> WritePhenomenonFiles(const std::filesystem::path& dir,
                                                        std::span<const TestCase> cases,
                                                        const EvaluationReport& report);

}  // namespace amrmeter

#endif  // AMRMETER_REPORT_H_
