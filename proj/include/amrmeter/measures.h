#ifndef AMRMETER_MEASURES_H_
#define AMRMETER_MEASURES_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace amrmeter {

enum class ScoreState { kRaw, kStandardized, kNormalized };

// A metric's (or the human) scores over a list of cases, in case order.
struct ScoreVector {
  std::string metric_id;
  std::vector<std::string> case_ids;
  std::vector<double> values;
  ScoreState state = ScoreState::kRaw;
};

// (x - mean) / std with the population standard deviation. A constant input
// is returned unchanged with a warning.
std::vector<double> Standardize(std::span<const double> values);
ScoreVector Standardize(const ScoreVector& v);

// (x - min) / (max - min). A constant input becomes all 0.5 with a warning.
std::vector<double> Normalize(std::span<const double> values);
ScoreVector Normalize(const ScoreVector& v);

// 1-based ranks with ties sharing their average rank.
std::vector<double> AverageRanks(std::span<const double> values);

// Spearman's rho with average ranks. Absent when either side is constant or
// has fewer than two values. Throws std::invalid_argument on a length mismatch.
std::optional<double> SpearmanRho(std::span<const double> metric,
                                  std::span<const double> human);

struct MadAvg {
  double avg = 0.0;
  double mad = 0.0;
};

// avg = mean(metric), mad = mean(|metric - human|). Throws
// std::invalid_argument for an empty group or a length mismatch.
MadAvg MadAndAvg(std::span<const double> metric, std::span<const double> human);

// Percentile with linear interpolation between order statistics, q in [0,100].
// Throws std::invalid_argument for empty input.
double Percentile(std::vector<double> values, double q);

enum class TauRule {
  kScorePercentile,  // 5th percentile of the normalized scores
  kDiffPercentile,   // 5th percentile of |pairwise score differences|
  kZero,
};

std::string_view TauRuleName(TauRule rule);
std::optional<TauRule> ParseTauRule(std::string_view name);

inline constexpr double kTauPercentile = 5.0;

double ComputeTau(std::span<const double> normalized_scores, TauRule rule);

// Fraction of unordered case pairs whose metric relation (ties when
// |dm| <= tau) equals the human relation (ties only when dh == 0). Absent
// for fewer than two cases.
std::optional<double> PairwiseRankingScore(std::span<const double> metric,
                                           std::span<const double> human, double tau);

}  // namespace amrmeter

#endif  // AMRMETER_MEASURES_H_
