#ifndef AMRMETER_WASSERSTEIN_H_
#define AMRMETER_WASSERSTEIN_H_

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "amrmeter/amr.h"
#include "amrmeter/embeddings.h"

namespace amrmeter {

struct TransportResult {
  double distance = 0.0;
  // plan[i][j]: mass moved from source i to sink j. Rows sum to 1/n, columns
  // to 1/m.
  std::vector<std::vector<double>> plan;
};

// Exact earth mover's distance between uniform distributions over n sources
// and m sinks with the given n x m cost matrix. Throws std::invalid_argument
// for an empty or ragged matrix.
TransportResult ExactTransport(const std::vector<std::vector<double>>& cost);

// Wasserstein-1 between uniform point clouds under Euclidean ground cost.
TransportResult ExactWasserstein(std::span<const Vector> a, std::span<const Vector> b);

double EuclideanDistance(std::span<const double> u, std::span<const double> v);

struct WwlkOptions {
  int iterations = 2;
  double self_weight = 0.5;
  bool canonicalize_inverse = true;
};

// Deterministic unit vector seeded from a hash of `label`, scaled by `scale`.
Vector HashedVector(std::string_view label, size_t dimension, double scale);

// Refined node vectors after `iterations` rounds, one per node of the
// labeled graph (variables first, then attribute constants). Concepts start
// from their lemma's table vector; constants and concepts missing from the
// table start from hashed vectors. Throws EmbeddingError if the table has no
// dimension.
std::vector<Vector> WwlkNodeEmbeddings(const AmrGraph& graph,
                                       const StaticEmbeddingTable& table,
                                       const WwlkOptions& options = {});

double WwlkDistance(const AmrGraph& a, const AmrGraph& b,
                    const StaticEmbeddingTable& table, const WwlkOptions& options = {});

// 1 / (1 + distance).
double WwlkSimilarity(const AmrGraph& a, const AmrGraph& b,
                      const StaticEmbeddingTable& table, const WwlkOptions& options = {});

}  // namespace amrmeter

#endif  // AMRMETER_WASSERSTEIN_H_
