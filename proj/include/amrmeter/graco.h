#ifndef AMRMETER_GRACO_H_
#define AMRMETER_GRACO_H_

#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "amrmeter/alignment.h"
#include "amrmeter/embeddings.h"
#include "amrmeter/metric_score.h"
#include "amrmeter/test_case.h"

namespace amrmeter {

enum class CohesionMode { kFull, kReduced };

struct CohesionNode {
  std::string variable;
  TokenVector vector;
};

struct CohesionEdge {
  size_t i;
  size_t j;
  double weight;
};

struct CohesionGraph {
  std::vector<CohesionNode> nodes;
  std::vector<CohesionEdge> edges;
  CohesionMode mode = CohesionMode::kFull;
};

struct ConnectivityScore {
  double value = 1.0;
  size_t edge_count = 0;
};

// Aligned concept nodes with static vectors. A span's vector is the mean of
// its token lookups.
std::vector<CohesionNode> StaticCohesionNodes(const ConceptAlignment& alignment,
                                              const std::vector<std::string>& tokens,
                                              const std::vector<std::string>& lemmas,
                                              const StaticEmbeddingTable& table);

// Aligned concept nodes with rows of a contextual sentence, averaged per span.
std::vector<CohesionNode> ContextualCohesionNodes(
    const ConceptAlignment& alignment, const ContextualEmbeddingStore::Sentence& sentence);

// Full mode: every pair of nodes. Reduced mode: pairs touching a node in
// `differing`. Edge weights are cosines. Throws std::invalid_argument for
// reduced mode without a differing set.
CohesionGraph BuildCohesionGraph(std::vector<CohesionNode> nodes, CohesionMode mode,
                                 const std::set<std::string>* differing = nullptr);

// Mean edge weight; 1 for a graph without edges (with a warning in full mode).
ConnectivityScore Connectivity(const CohesionGraph& graph);

// Variables whose concept lemma occurs a different number of times in the
// other graph. First: variables of `a`, second: variables of `b`.
std::pair<std::set<std::string>, std::set<std::string>> DifferingVariables(
    const AmrGraph& a, const AmrGraph& b);

enum class GracoEmbedding { kStatic, kContextual };

struct GracoVariant {
  GracoEmbedding embedding = GracoEmbedding::kStatic;
  CohesionMode mode = CohesionMode::kFull;
};

// "graco_static", "graco_static_reduced", "graco_contextual", ...
std::string GracoMetricId(const GracoVariant& variant);

struct GracoResources {
  const StaticEmbeddingTable* table = nullptr;
  const ContextualEmbeddingStore* store = nullptr;
  const ExternalAlignments* alignments = nullptr;
};

// 1 - |cs_A - cs_B|. Components: cs_a, cs_b, edges_a, edges_b, nodes_a,
// nodes_b. Throws EmbeddingError when the variant's embeddings are missing.
MetricScore GracoScore(const TestCase& test_case, const GracoVariant& variant,
                       const GracoResources& resources);

}  // namespace amrmeter

#endif  // AMRMETER_GRACO_H_
