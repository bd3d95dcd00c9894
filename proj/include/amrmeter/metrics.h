#ifndef AMRMETER_METRICS_H_
#define AMRMETER_METRICS_H_

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "amrmeter/alignment.h"
#include "amrmeter/embeddings.h"
#include "amrmeter/metric_score.h"
#include "amrmeter/test_case.h"
#include "amrmeter/text_metrics.h"

namespace amrmeter {

// Shared read-only resources. Null members are absent.
struct MetricResources {
  const StaticEmbeddingTable* static_table = nullptr;
  const ContextualEmbeddingStore* contextual_store = nullptr;
  const ExternalAlignments* alignments = nullptr;
  const SynonymLexicon* lexicon = nullptr;
};

// Flag names reported for missing resources.
inline constexpr std::string_view kStaticEmbeddingFlag = "--static-emb";
inline constexpr std::string_view kContextualEmbeddingFlag = "--ctx-emb";

enum class MetricFamily { kText, kGraph, kHybrid };

class Metric {
 public:
  virtual ~Metric() = default;
  virtual std::string_view id() const = 0;
  virtual MetricFamily family() const = 0;
  // Scores one case. `seed` drives any randomized search.
  virtual MetricScore Score(const TestCase& test_case, uint64_t seed) const = 0;
  // Flags of required resources that are absent; empty when ready.
  virtual std::vector<std::string> MissingResources() const { return {}; }
  // Hyperparameters recorded in report metadata.
  virtual std::map<std::string, std::string> Config() const { return {}; }
};

const std::vector<std::string>& KnownMetricIds();

// Throws std::invalid_argument for an unknown id.
std::unique_ptr<Metric> MakeMetric(std::string_view id, const MetricResources& resources);

}  // namespace amrmeter

#endif  // AMRMETER_METRICS_H_
