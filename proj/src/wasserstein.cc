#include "amrmeter/wasserstein.h"

#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <random>
#include <utility>
#include <stdexcept>

#include "amrmeter/wl_kernel.h"

namespace amrmeter {
namespace {

// Successive shortest paths on the bipartite transportation network with
// integer supplies: every source carries m units and every sink absorbs n,
// so a total of n*m units corresponds to probability mass 1.
class MinCostFlow {
 public:
  explicit MinCostFlow(size_t nodes) : graph_(nodes) {}

  void AddEdge(size_t from, size_t to, int64_t capacity, double cost) {
    graph_[from].push_back(edges_.size());
    edges_.push_back({to, capacity, cost});
    graph_[to].push_back(edges_.size());
    edges_.push_back({from, 0, -cost});
  }

  double Run(size_t source, size_t sink) {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    constexpr double kEps = 1e-12;
    const size_t n = graph_.size();
    double total = 0.0;
    while (true) {
      std::vector<double> dist(n, kInf);
      std::vector<size_t> via(n, SIZE_MAX);
      std::vector<bool> queued(n, false);
      std::deque<size_t> queue{source};
      dist[source] = 0.0;
      queued[source] = true;
      while (!queue.empty()) {
        size_t u = queue.front();
        queue.pop_front();
        queued[u] = false;
        for (size_t e : graph_[u]) {
          const Edge& edge = edges_[e];
          if (edge.capacity <= 0) continue;
          const double nd = dist[u] + edge.cost;
          if (nd < dist[edge.to] - kEps) {
            dist[edge.to] = nd;
            via[edge.to] = e;
            if (!queued[edge.to]) {
              queued[edge.to] = true;
              queue.push_back(edge.to);
            }
          }
        }
      }
      if (dist[sink] == kInf) break;
      int64_t push = std::numeric_limits<int64_t>::max();
      for (size_t v = sink; v != source; v = edges_[via[v] ^ 1].to)
        push = std::min(push, edges_[via[v]].capacity);
      for (size_t v = sink; v != source; v = edges_[via[v] ^ 1].to) {
        edges_[via[v]].capacity -= push;
        edges_[via[v] ^ 1].capacity += push;
      }
      total += static_cast<double>(push) * dist[sink];
    }
    return total;
  }

  // Flow currently on the forward edge with the given id.
  int64_t FlowOn(size_t edge_id) const { return edges_[edge_id ^ 1].capacity; }
  size_t edge_count() const { return edges_.size(); }

 private:
  struct Edge {
    size_t to;
    int64_t capacity;
    double cost;
  };
  std::vector<std::vector<size_t>> graph_;
  std::vector<Edge> edges_;
};

uint64_t Fnv1a(std::string_view s) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

TransportResult ExactTransport(const std::vector<std::vector<double>>& cost) {
  const size_t n = cost.size();
  if (n == 0 || cost[0].empty()) throw std::invalid_argument("transport: empty cost matrix");
  const size_t m = cost[0].size();
  for (const auto& row : cost) {
    if (row.size() != m) throw std::invalid_argument("transport: ragged cost matrix");
  }
  const size_t source = n + m, sink = n + m + 1;
  MinCostFlow flow(n + m + 2);
  std::vector<size_t> cell_edges;
  cell_edges.reserve(n * m);
  const auto total = static_cast<int64_t>(n * m);
  for (size_t i = 0; i < n; ++i) flow.AddEdge(source, i, static_cast<int64_t>(m), 0.0);
  for (size_t j = 0; j < m; ++j) flow.AddEdge(n + j, sink, static_cast<int64_t>(n), 0.0);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < m; ++j) {
      cell_edges.push_back(flow.edge_count());
      flow.AddEdge(i, n + j, total, cost[i][j]);
    }
  }
  flow.Run(source, sink);
  TransportResult result;
  result.plan.assign(n, std::vector<double>(m, 0.0));
  const double scale = static_cast<double>(total);
  double distance = 0.0;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < m; ++j) {
      const double mass = static_cast<double>(flow.FlowOn(cell_edges[i * m + j])) / scale;
      result.plan[i][j] = mass;
      distance += mass * cost[i][j];
    }
  }
  result.distance = distance;
  return result;
}

double EuclideanDistance(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw EmbeddingError("distance: dimension mismatch");
  double s = 0.0;
  for (size_t i = 0; i < u.size(); ++i) s += (u[i] - v[i]) * (u[i] - v[i]);
  return std::sqrt(s);
}

TransportResult ExactWasserstein(std::span<const Vector> a, std::span<const Vector> b) {
  std::vector<std::vector<double>> cost(a.size(), std::vector<double>(b.size()));
  for (size_t i = 0; i < a.size(); ++i) {
    for (size_t j = 0; j < b.size(); ++j) cost[i][j] = EuclideanDistance(a[i], b[j]);
  }
  return ExactTransport(cost);
}

Vector HashedVector(std::string_view label, size_t dimension, double scale) {
  std::mt19937_64 rng(Fnv1a(label));
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(dimension);
  double norm = 0.0;
  while (norm == 0.0) {
    for (double& x : v) x = normal(rng);
    norm = Norm(v);
  }
  for (double& x : v) x = x / norm * scale;
  return v;
}

std::vector<Vector> WwlkNodeEmbeddings(const AmrGraph& graph,
                                       const StaticEmbeddingTable& table,
                                       const WwlkOptions& options) {
  const size_t dim = table.dimension();
  if (dim == 0) throw EmbeddingError("wwlk: static embedding table has no dimension");
  const double scale = table.mean_norm() > 0.0 ? table.mean_norm() : 1.0;
  const LabeledGraph lg = ToLabeledGraph(graph, options.canonicalize_inverse);

  std::vector<Vector> h(lg.labels.size());
  for (size_t v = 0; v < lg.labels.size(); ++v) {
    if (!lg.variables[v].empty()) {
      const ConceptNode node = SplitConcept(lg.variables[v], lg.labels[v]);
      if (const Vector* found = table.Find(node.lemma)) {
        h[v] = *found;
        continue;
      }
    }
    h[v] = HashedVector(lg.labels[v], dim, scale);
  }

  for (int k = 0; k < options.iterations; ++k) {
    std::vector<Vector> next(h.size());
    for (size_t v = 0; v < h.size(); ++v) {
      const auto& neighbors = lg.adjacency[v];
      if (neighbors.empty()) {
        next[v] = h[v];
        continue;
      }
      Vector mean(dim, 0.0);
      for (const auto& e : neighbors) {
        for (size_t d = 0; d < dim; ++d) mean[d] += h[e.neighbor][d];
      }
      next[v].resize(dim);
      const double inv = 1.0 / static_cast<double>(neighbors.size());
      for (size_t d = 0; d < dim; ++d) {
        next[v][d] = options.self_weight * h[v][d] +
                     (1.0 - options.self_weight) * mean[d] * inv;
      }
    }
    h = std::move(next);
  }
  return h;
}

double WwlkDistance(const AmrGraph& a, const AmrGraph& b,
                    const StaticEmbeddingTable& table, const WwlkOptions& options) {
  auto ha = WwlkNodeEmbeddings(a, table, options);
  auto hb = WwlkNodeEmbeddings(b, table, options);
  // Fixed orientation keeps the result bitwise symmetric.
  if (hb < ha) std::swap(ha, hb);
  return ExactWasserstein(ha, hb).distance;
}

double WwlkSimilarity(const AmrGraph& a, const AmrGraph& b,
                      const StaticEmbeddingTable& table, const WwlkOptions& options) {
  return 1.0 / (1.0 + WwlkDistance(a, b, table, options));
}

}  // namespace amrmeter
