#ifndef AMRMETER_EVALUATE_H_
#define AMRMETER_EVALUATE_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "amrmeter/measures.h"
#include "amrmeter/metric_score.h"
#include "amrmeter/metrics.h"
#include "amrmeter/test_case.h"

namespace amrmeter {

inline constexpr std::string_view kOverallGroup = "Overall";
inline constexpr std::string_view kThreadsEnv = "AMRMETER_THREADS";

// Per-case seed: `seed` mixed with a hash of the case id, so results do not
// depend on case order or scheduling.
uint64_t CaseSeed(uint64_t seed, std::string_view case_id);

// `requested` if positive, else hardware concurrency; capped by
// AMRMETER_THREADS when set to a positive integer.
size_t ResolveThreadCount(size_t requested = 0);

// Raw scores, indexed [metric][case] in input order.
struct ScoreTable {
  std::vector<std::string> metric_ids;
  std::vector<std::vector<std::optional<MetricScore>>> scores;
  std::vector<std::vector<std::string>> errors;  // empty string when scored
};

// Scores every (metric, case) pair in parallel. Exceptions are caught per
// pair and recorded in `errors`.
ScoreTable ScoreCases(std::span<const TestCase> cases, std::span<const Metric* const> metrics,
                      uint64_t seed, size_t threads = 0);

struct EvaluationConfig {
  TauRule tau_rule = TauRule::kScorePercentile;
  uint64_t seed = 0;
  size_t threads = 0;
};

struct ReportRow {
  Dataset dataset;
  std::string phenomenon;  // kOverallGroup for the pooled row
  std::string metric_id;
  size_t count = 0;
  double avg = 0.0;
  double mad = 0.0;
  std::optional<double> ranking;
  std::optional<double> spearman;
};

// Human scores per group: mean of scores normalized over the whole dataset
// and mean of scores normalized within the group alone.
struct AnnotationRow {
  Dataset dataset;
  std::string phenomenon;
  size_t count = 0;
  double global_avg = 0.0;
  double group_avg = 0.0;
};

struct MetricFailure {
  std::string metric_id;
  size_t failed_cases = 0;
  std::string message;  // first error
};

struct EvaluationReport {
  std::vector<std::string> metric_ids;
  std::vector<ReportRow> rows;
  std::vector<AnnotationRow> annotation;
  std::vector<MetricFailure> failures;
  // dataset -> metric -> tau
  std::map<Dataset, std::map<std::string, double>> tau;
  std::map<std::string, std::string> metadata;
  std::map<std::string, std::map<std::string, std::string>> metric_config;
  ScoreTable raw;
  // Normalized metric scores [metric][case]; absent for failed cases.
  std::vector<std::vector<std::optional<double>>> normalized;
  // Normalized human scores per case.
  std::vector<double> human_normalized;

  const ReportRow* Find(Dataset dataset, std::string_view phenomenon,
                        std::string_view metric_id) const;
};

// Scores all metrics, then per dataset standardizes and normalizes every
// metric and the human scores and computes avg, MAD, ranking score and
// Spearman per phenomenon and pooled. Metrics with missing resources or
// failing cases are reported in `failures`; the rest are unaffected.
EvaluationReport Evaluate(std::span<const TestCase> cases,
                          std::span<const Metric* const> metrics,
                          const EvaluationConfig& config = {});

// Aggregation only, from precomputed scores.
EvaluationReport Aggregate(std::span<const TestCase> cases, ScoreTable raw,
                           const EvaluationConfig& config = {});

}  // namespace amrmeter

#endif  // AMRMETER_EVALUATE_H_
