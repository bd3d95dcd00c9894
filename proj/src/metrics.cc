#include "amrmeter/metrics.h"

#include <functional>
#include <stdexcept>

#include "amrmeter/graco.h"
#include "amrmeter/smatch.h"
#include "amrmeter/wasserstein.h"
#include "amrmeter/wl_kernel.h"

namespace amrmeter {
namespace {

std::string Bool(bool b) { return b ? "true" : "false"; }

SentencePair PairOf(const TestCase& c) {
  return {c.sentence_a, c.sentence_b, c.tokens_a, c.tokens_b};
}

MetricScore FromMatch(std::string id, const MatchResult& r) {
  return {std::move(id),
          r.f1,
          {{"precision", r.precision},
           {"recall", r.recall},
           {"matched", r.matched_weight},
           {"triples_a", static_cast<double>(r.triples_a)},
           {"triples_b", static_cast<double>(r.triples_b)}}};
}

class BleuMetric : public Metric {
 public:
  std::string_view id() const override { return "bleu"; }
  MetricFamily family() const override { return MetricFamily::kText; }
  MetricScore Score(const TestCase& c, uint64_t) const override { return Bleu(PairOf(c)); }
  std::map<std::string, std::string> Config() const override {
    return {{"max_n", "4"}, {"smoothing", "method4"}, {"K", "5"}};
  }
};

class ChrfMetric : public Metric {
 public:
  std::string_view id() const override { return "chrf++"; }
  MetricFamily family() const override { return MetricFamily::kText; }
  MetricScore Score(const TestCase& c, uint64_t) const override {
    return ChrfPlusPlus(PairOf(c));
  }
  std::map<std::string, std::string> Config() const override {
    return {{"char_order", "6"}, {"word_order", "2"}, {"beta", "2"},
            {"averaging", "per-order-f"}};
  }
};

class MeteorMetric : public Metric {
 public:
  explicit MeteorMetric(const SynonymLexicon* lexicon) : lexicon_(lexicon) {}
  std::string_view id() const override { return "meteor_lite"; }
  MetricFamily family() const override { return MetricFamily::kText; }
  MetricScore Score(const TestCase& c, uint64_t) const override {
    return MeteorLite(PairOf(c), lexicon_);
  }
  std::map<std::string, std::string> Config() const override {
    return {{"alpha", "0.9"}, {"beta", "3"}, {"gamma", "0.5"},
            {"synonyms", Bool(lexicon_ != nullptr)}};
  }

 private:
  const SynonymLexicon* lexicon_;
};

class BertScoreMetric : public Metric {
 public:
  explicit BertScoreMetric(const ContextualEmbeddingStore* store) : store_(store) {}
  std::string_view id() const override { return "bertscore"; }
  MetricFamily family() const override { return MetricFamily::kText; }
  MetricScore Score(const TestCase& c, uint64_t) const override {
    if (store_ == nullptr) throw EmbeddingError("bertscore needs a contextual embedding store");
    return BertScore(*store_, c.id);
  }
  std::vector<std::string> MissingResources() const override {
    if (store_ == nullptr) return {std::string(kContextualEmbeddingFlag)};
    return {};
  }
  std::map<std::string, std::string> Config() const override { return {{"idf", "false"}}; }

 private:
  const ContextualEmbeddingStore* store_;
};

class SmatchMetric : public Metric {
 public:
  std::string_view id() const override { return "smatch"; }
  MetricFamily family() const override { return MetricFamily::kGraph; }
  MetricScore Score(const TestCase& c, uint64_t seed) const override {
    SmatchOptions options;
    options.seed = seed;
    return FromMatch("smatch", Smatch(c.amr_a, c.amr_b, options));
  }
  std::map<std::string, std::string> Config() const override {
    SmatchOptions o;
    return {{"restarts", std::to_string(o.restarts)},
            {"include_root", Bool(o.include_root)},
            {"canonicalize_inverse", Bool(o.canonicalize_inverse)}};
  }
};

class S2matchMetric : public Metric {
 public:
  explicit S2matchMetric(const StaticEmbeddingTable* table) : table_(table) {}
  std::string_view id() const override { return "s2match"; }
  MetricFamily family() const override { return MetricFamily::kGraph; }
  MetricScore Score(const TestCase& c, uint64_t seed) const override {
    if (table_ == nullptr) throw EmbeddingError("s2match needs a static embedding table");
    S2matchOptions options;
    options.smatch.seed = seed;
    return FromMatch("s2match", S2match(c.amr_a, c.amr_b, *table_, options));
  }
  std::vector<std::string> MissingResources() const override {
    if (table_ == nullptr) return {std::string(kStaticEmbeddingFlag)};
    return {};
  }
  std::map<std::string, std::string> Config() const override {
    S2matchOptions o;
    return {{"restarts", std::to_string(o.smatch.restarts)},
            {"cutoff", "0.9"},
            {"sense_coefficient", "0.95"},
            {"include_root", Bool(o.smatch.include_root)}};
  }

 private:
  const StaticEmbeddingTable* table_;
};

class WlkMetric : public Metric {
 public:
  std::string_view id() const override { return "wlk"; }
  MetricFamily family() const override { return MetricFamily::kGraph; }
  MetricScore Score(const TestCase& c, uint64_t) const override {
    return {"wlk", WlkSimilarity(c.amr_a, c.amr_b), {}};
  }
  std::map<std::string, std::string> Config() const override {
    WlOptions o;
    return {{"iterations", std::to_string(o.iterations)},
            {"edge_labels", Bool(o.use_edge_labels)},
            {"canonicalize_inverse", Bool(o.canonicalize_inverse)}};
  }
};

class WwlkMetric : public Metric {
 public:
  explicit WwlkMetric(const StaticEmbeddingTable* table) : table_(table) {}
  std::string_view id() const override { return "wwlk"; }
  MetricFamily family() const override { return MetricFamily::kGraph; }
  MetricScore Score(const TestCase& c, uint64_t) const override {
    if (table_ == nullptr) throw EmbeddingError("wwlk needs a static embedding table");
    const double d = WwlkDistance(c.amr_a, c.amr_b, *table_);
    return {"wwlk", 1.0 / (1.0 + d), {{"distance", d}}};
  }
  std::vector<std::string> MissingResources() const override {
    if (table_ == nullptr) return {std::string(kStaticEmbeddingFlag)};
    return {};
  }
  std::map<std::string, std::string> Config() const override {
    WwlkOptions o;
    return {{"iterations", std::to_string(o.iterations)},
            {"self_weight", "0.5"},
            {"similarity", "1/(1+d)"}};
  }

 private:
  const StaticEmbeddingTable* table_;
};

class GracoMetric : public Metric {
 public:
  GracoMetric(GracoVariant variant, const MetricResources& resources)
      : variant_(variant),
        id_(GracoMetricId(variant)),
        resources_{resources.static_table, resources.contextual_store, resources.alignments} {}
  std::string_view id() const override { return id_; }
  MetricFamily family() const override { return MetricFamily::kHybrid; }
  MetricScore Score(const TestCase& c, uint64_t) const override {
    return GracoScore(c, variant_, resources_);
  }
  std::vector<std::string> MissingResources() const override {
    if (variant_.embedding == GracoEmbedding::kStatic && resources_.table == nullptr)
      return {std::string(kStaticEmbeddingFlag)};
    if (variant_.embedding == GracoEmbedding::kContextual && resources_.store == nullptr)
      return {std::string(kContextualEmbeddingFlag)};
    return {};
  }
  std::map<std::string, std::string> Config() const override {
    return {{"mode", variant_.mode == CohesionMode::kFull ? "full" : "reduced"},
            {"alignment", resources_.alignments ? "external+heuristic" : "heuristic"}};
  }

 private:
  GracoVariant variant_;
  std::string id_;
  GracoResources resources_;
};

}  // namespace

const std::vector<std::string>& KnownMetricIds() {
  static const std::vector<std::string> ids = {
      "bleu",         "chrf++",       "meteor_lite",  "bertscore",
      "smatch",       "s2match",      "wlk",          "wwlk",
      "graco_static", "graco_static_reduced", "graco_contextual",
      "graco_contextual_reduced"};
  return ids;
}

std::unique_ptr<Metric> MakeMetric(std::string_view id, const MetricResources& r) {
  if (id == "bleu") return std::make_unique<BleuMetric>();
  if (id == "chrf++") return std::make_unique<ChrfMetric>();
  if (id == "meteor_lite") return std::make_unique<MeteorMetric>(r.lexicon);
  if (id == "bertscore") return std::make_unique<BertScoreMetric>(r.contextual_store);
  if (id == "smatch") return std::make_unique<SmatchMetric>();
  if (id == "s2match") return std::make_unique<S2matchMetric>(r.static_table);
  if (id == "wlk") return std::make_unique<WlkMetric>();
  if (id == "wwlk") return std::make_unique<WwlkMetric>(r.static_table);
  for (GracoEmbedding e : {GracoEmbedding::kStatic, GracoEmbedding::kContextual}) {
    for (CohesionMode m : {CohesionMode::kFull, CohesionMode::kReduced}) {
      GracoVariant v{e, m};
      if (id == GracoMetricId(v)) return std::make_unique<GracoMetric>(v, r);
    }
  }
  throw std::invalid_argument("unknown metric '" + std::string(id) + "'");
}

}  // namespace amrmeter
