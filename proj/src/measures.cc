#include "amrmeter/measures.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "amrmeter/logging.h"

namespace amrmeter {
namespace {

double Mean(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

int Sign(double x) { return (x > 0.0) - (x < 0.0); }

void CheckSameLength(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("score vectors differ in length");
}

}  // namespace

std::vector<double> Standardize(std::span<const double> values) {
  std::vector<double> out(values.begin(), values.end());
  if (values.empty()) return out;
  const double mean = Mean(values);
  double ss = 0.0;
  for (double x : values) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / static_cast<double>(values.size()));
  if (sd == 0.0) {
    Warn("standardize: zero variance, scores left unchanged");
    return out;
  }
  for (double& x : out) x = (x - mean) / sd;
  return out;
}

ScoreVector Standardize(const ScoreVector& v) {
  ScoreVector out = v;
  out.values = Standardize(v.values);
  out.state = ScoreState::kStandardized;
  return out;
}

std::vector<double> Normalize(std::span<const double> values) {
  std::vector<double> out(values.begin(), values.end());
  if (values.empty()) return out;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double min = *lo, range = *hi - *lo;
  if (range == 0.0) {
    Warn("normalize: constant scores, set to 0.5");
    std::fill(out.begin(), out.end(), 0.5);
    return out;
  }
  for (double& x : out) x = (x - min) / range;
  return out;
}

ScoreVector Normalize(const ScoreVector& v) {
  ScoreVector out = v;
  out.values = Normalize(v.values);
  out.state = ScoreState::kNormalized;
  return out;
}

std::vector<double> AverageRanks(std::span<const double> values) {
  const size_t n = values.size();
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  size_t i = 0;
  while (i < n) {
    size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

std::optional<double> SpearmanRho(std::span<const double> metric,
                                  std::span<const double> human) {
  CheckSameLength(metric, human);
  if (metric.size() < 2) return std::nullopt;
  const auto rm = AverageRanks(metric);
  const auto rh = AverageRanks(human);
  const double mm = Mean(rm), mh = Mean(rh);
  double cov = 0.0, vm = 0.0, vh = 0.0;
  for (size_t i = 0; i < rm.size(); ++i) {
    cov += (rm[i] - mm) * (rh[i] - mh);
    vm += (rm[i] - mm) * (rm[i] - mm);
    vh += (rh[i] - mh) * (rh[i] - mh);
  }
  if (vm == 0.0 || vh == 0.0) return std::nullopt;
  return std::clamp(cov / std::sqrt(vm * vh), -1.0, 1.0);
}

MadAvg MadAndAvg(std::span<const double> metric, std::span<const double> human) {
  CheckSameLength(metric, human);
  if (metric.empty()) throw std::invalid_argument("mad_and_avg: empty group");
  MadAvg out;
  double abs_sum = 0.0;
  for (size_t i = 0; i < metric.size(); ++i) abs_sum += std::abs(metric[i] - human[i]);
  out.avg = Mean(metric);
  out.mad = abs_sum / static_cast<double>(metric.size());
  return out;
}

double Percentile(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("percentile of empty input");
  std::sort(values.begin(), values.end());
  const double pos = std::clamp(q, 0.0, 100.0) / 100.0 * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<size_t>(std::floor(pos));
  const size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + (values[hi] - values[lo]) * frac;
}

std::string_view TauRuleName(TauRule rule) {
  switch (rule) {
    case TauRule::kScorePercentile:
      return "score-percentile";
    case TauRule::kDiffPercentile:
      return "diff-percentile";
    case TauRule::kZero:
      return "zero";
  }
  return "score-percentile";
}

std::optional<TauRule> ParseTauRule(std::string_view name) {
  for (TauRule r : {TauRule::kScorePercentile, TauRule::kDiffPercentile, TauRule::kZero}) {
    if (TauRuleName(r) == name) return r;
  }
  return std::nullopt;
}

double ComputeTau(std::span<const double> normalized_scores, TauRule rule) {
  if (rule == TauRule::kZero || normalized_scores.empty()) return 0.0;
  if (rule == TauRule::kScorePercentile)
    return Percentile({normalized_scores.begin(), normalized_scores.end()}, kTauPercentile);
  std::vector<double> diffs;
  const size_t n = normalized_scores.size();
  if (n < 2) return 0.0;
  diffs.reserve(n * (n - 1) / 2);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j)
      diffs.push_back(std::abs(normalized_scores[i] - normalized_scores[j]));
  }
  return Percentile(std::move(diffs), kTauPercentile);
}

std::optional<double> PairwiseRankingScore(std::span<const double> metric,
                                           std::span<const double> human, double tau) {
  CheckSameLength(metric, human);
  const size_t n = metric.size();
  if (n < 2) return std::nullopt;
  size_t points = 0, pairs = 0;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      const double dm = metric[i] - metric[j];
      const double dh = human[i] - human[j];
      const int rm = std::abs(dm) <= tau ? 0 : Sign(dm);
      const int rh = Sign(dh);
      points += rm == rh ? 1 : 0;
      ++pairs;
    }
  }
  return static_cast<double>(points) / static_cast<double>(pairs);
}

}  // namespace amrmeter
