#include "amrmeter/evaluate.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <set>
#include <thread>

namespace amrmeter {
namespace {

uint64_t Fnv1a(std::string_view s) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

uint64_t CaseSeed(uint64_t seed, std::string_view case_id) { return seed + Fnv1a(case_id); }

size_t ResolveThreadCount(size_t requested) {
  size_t n = requested > 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv(std::string(kThreadsEnv).c_str())) {
    size_t cap = 0;
    std::string_view s(env);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), cap);
    if (ec == std::errc() && ptr == s.data() + s.size() && cap > 0) n = std::min(n, cap);
  }
  return n;
}

ScoreTable ScoreCases(std::span<const TestCase> cases, std::span<const Metric* const> metrics,
                      uint64_t seed, size_t threads) {
  ScoreTable table;
  const size_t nm = metrics.size(), nc = cases.size();
  for (const Metric* m : metrics) table.metric_ids.emplace_back(m->id());
  table.scores.assign(nm, std::vector<std::optional<MetricScore>>(nc));
  table.errors.assign(nm, std::vector<std::string>(nc));

  std::vector<uint64_t> seeds(nc);
  for (size_t c = 0; c < nc; ++c) seeds[c] = CaseSeed(seed, cases[c].id);

  std::atomic<size_t> next{0};
  auto worker = [&] {
    while (true) {
      const size_t item = next.fetch_add(1);
      if (item >= nm * nc) return;
      const size_t m = item / nc, c = item % nc;
      try {
        table.scores[m][c] = metrics[m]->Score(cases[c], seeds[c]);
      } catch (const std::exception& e) {
        table.errors[m][c] = e.what();
        if (table.errors[m][c].empty()) table.errors[m][c] = "unknown error";
      }
    }
  };
  const size_t n_threads = std::min(ResolveThreadCount(threads), std::max<size_t>(1, nm * nc));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return table;
}

const ReportRow* EvaluationReport::Find(Dataset dataset, std::string_view phenomenon,
                                        std::string_view metric_id) const {
  for (const auto& row : rows) {
    if (row.dataset == dataset && row.phenomenon == phenomenon && row.metric_id == metric_id)
      return &row;
  }
  return nullptr;
}

EvaluationReport Evaluate(std::span<const TestCase> cases,
                          std::span<const Metric* const> metrics,
                          const EvaluationConfig& config) {
  std::vector<const Metric*> ready;
  std::vector<std::string> missing(metrics.size());
  for (size_t m = 0; m < metrics.size(); ++m) {
    const auto flags = metrics[m]->MissingResources();
    if (flags.empty()) {
      ready.push_back(metrics[m]);
      continue;
    }
    std::string msg = std::string(metrics[m]->id()) + " requires";
    for (const auto& f : flags) msg += " " + f;
    missing[m] = msg;
  }
  ScoreTable partial = ScoreCases(cases, ready, config.seed, config.threads);

  ScoreTable raw;
  size_t r = 0;
  for (size_t m = 0; m < metrics.size(); ++m) {
    raw.metric_ids.emplace_back(metrics[m]->id());
    if (missing[m].empty()) {
      raw.scores.push_back(std::move(partial.scores[r]));
      raw.errors.push_back(std::move(partial.errors[r]));
      ++r;
    } else {
      raw.scores.emplace_back(cases.size());
      raw.errors.emplace_back(cases.size(), missing[m]);
    }
  }
  EvaluationReport report = Aggregate(cases, std::move(raw), config);
  for (const Metric* m : metrics) report.metric_config[std::string(m->id())] = m->Config();
  return report;
}

EvaluationReport Aggregate(std::span<const TestCase> cases, ScoreTable raw,
                           const EvaluationConfig& config) {
  EvaluationReport report;
  report.metric_ids = raw.metric_ids;
  const size_t nm = raw.metric_ids.size(), nc = cases.size();
  report.normalized.assign(nm, std::vector<std::optional<double>>(nc));
  report.human_normalized.assign(nc, 0.0);

  for (size_t m = 0; m < nm; ++m) {
    MetricFailure failure{raw.metric_ids[m], 0, ""};
    for (size_t c = 0; c < nc; ++c) {
      if (raw.errors[m][c].empty()) continue;
      if (failure.failed_cases++ == 0) failure.message = raw.errors[m][c];
    }
    if (failure.failed_cases > 0) report.failures.push_back(std::move(failure));
  }

  std::set<Dataset> datasets;
  for (const auto& c : cases) datasets.insert(c.dataset);
  for (Dataset d : datasets) {
    std::vector<size_t> idx;
    for (size_t c = 0; c < nc; ++c) {
      if (cases[c].dataset == d) idx.push_back(c);
    }
    std::vector<double> human_raw;
    for (size_t c : idx) human_raw.push_back(cases[c].human_score);
    const std::vector<double> human = Normalize(Standardize(human_raw));
    for (size_t k = 0; k < idx.size(); ++k) report.human_normalized[idx[k]] = human[k];

    // Groups: phenomena in name order, then the pooled row.
    std::map<std::string, std::vector<size_t>> groups;
    for (size_t c : idx) groups[cases[c].phenomenon].push_back(c);
    std::vector<std::pair<std::string, std::vector<size_t>>> ordered(groups.begin(),
                                                                     groups.end());
    ordered.emplace_back(std::string(kOverallGroup), idx);

    for (const auto& [name, members] : ordered) {
      AnnotationRow a{d, name, members.size(), 0.0, 0.0};
      std::vector<double> global, own;
      for (size_t c : members) {
        global.push_back(report.human_normalized[c]);
        own.push_back(cases[c].human_score);
      }
      own = Normalize(Standardize(own));
      for (size_t k = 0; k < members.size(); ++k) {
        a.global_avg += global[k];
        a.group_avg += own[k];
      }
      a.global_avg /= static_cast<double>(members.size());
      a.group_avg /= static_cast<double>(members.size());
      report.annotation.push_back(a);
    }

    for (size_t m = 0; m < nm; ++m) {
      std::vector<size_t> ok;
      std::vector<double> values;
      for (size_t c : idx) {
        if (raw.scores[m][c]) {
          ok.push_back(c);
          values.push_back(raw.scores[m][c]->value);
        }
      }
      if (ok.empty()) continue;
      const std::vector<double> norm = Normalize(Standardize(values));
      for (size_t k = 0; k < ok.size(); ++k) report.normalized[m][ok[k]] = norm[k];
      const double tau = ComputeTau(norm, config.tau_rule);
      report.tau[d][raw.metric_ids[m]] = tau;

      for (const auto& [name, members] : ordered) {
        std::vector<size_t> scored;
        for (size_t c : members) {
          if (report.normalized[m][c]) scored.push_back(c);
        }
        if (scored.empty()) continue;
        std::vector<double> mv, hv;
        for (size_t c : scored) {
          mv.push_back(*report.normalized[m][c]);
          hv.push_back(report.human_normalized[c]);
        }
        const MadAvg ma = MadAndAvg(mv, hv);
        report.rows.push_back({d, name, raw.metric_ids[m], scored.size(), ma.avg, ma.mad,
                               PairwiseRankingScore(mv, hv, tau), SpearmanRho(mv, hv)});
      }
    }
  }

  report.metadata = {{"seed", std::to_string(config.seed)},
                     {"tau_rule", std::string(TauRuleName(config.tau_rule))},
                     {"tau_percentile", "5"},
                     {"transform", "standardize(population std) then min-max"},
                     {"cases", std::to_string(nc)}};
  report.raw = std::move(raw);
  return report;
}

}  // namespace amrmeter
