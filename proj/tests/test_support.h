#ifndef AMRMETER_TESTS_TEST_SUPPORT_H_
#define AMRMETER_TESTS_TEST_SUPPORT_H_

// Fixtures, generators and independent oracles shared by the test binaries.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "amrmeter/amr.h"
#include "amrmeter/embeddings.h"

namespace amrmeter::testing {

inline constexpr const char* kBoyHits = "(xv0 / hit-01 :ARG0 (xv2 / boy) :ARG1 (xv1 / baseball))";
inline constexpr const char* kChildHits = "(xv0 / hit-01 :ARG0 (xv2 / child) :ARG1 (xv1 / baseball))";
inline constexpr const char* kNegation =
    "(xv0 / exercise-01 :ARG0 (xv1 / man) :polarity -)";
inline constexpr const char* kCoordination =
    "(xv0 / and :op1 (xv1 / walk-01 :ARG0 (xv3 / child)) "
    ":op2 (xv2 / pull-up-07 :ARG1 (xv5 / jeep-01) :polarity -))";
inline constexpr const char* kWalkDog =
    "(xv0 / walk-01 :ARG0 (xv1 / woman) :ARG1 (xv2 / dog) "
    ":direction (xv3 / down :op1 (xv4 / street)))";
inline constexpr const char* kWalkCat =
    "(xv0 / walk-01 :ARG0 (xv1 / woman) :ARG1 (xv2 / cat) "
    ":direction (xv3 / down :op1 (xv4 / street)))";

inline std::string TestData(const std::string& name) {
  return std::string(AMRMETER_TESTDATA) + "/" + name;
}

// Random connected graph: a random tree over `vars` variables, optional
// re-entrant edges and attributes. Small label pools force ambiguity.
inline AmrGraph RandomGraph(std::mt19937_64& rng, int vars,
                            const std::vector<std::string>& concepts = {"a", "b", "c", "d-01",
                                                                        "d-02"},
                            bool allow_inverse = true) {
  static const std::vector<std::string> kRoles = {":ARG0", ":ARG1", ":mod", ":ARG0-of"};
  static const std::vector<std::string> kAttrRoles = {":polarity", ":quant"};
  static const std::vector<std::string> kValues = {"-", "2", "\"x\""};
  auto pick = [&](size_t n) { return std::uniform_int_distribution<size_t>(0, n - 1)(rng); };
  std::vector<Instance> instances;
  for (int i = 0; i < vars; ++i)
    instances.push_back({"v" + std::to_string(i), concepts[pick(concepts.size())]});
  const size_t role_pool = allow_inverse ? kRoles.size() : kRoles.size() - 1;
  std::vector<Relation> relations;
  for (int i = 1; i < vars; ++i) {
    const size_t parent = pick(static_cast<size_t>(i));
    relations.push_back({"v" + std::to_string(parent), kRoles[pick(role_pool)],
                         "v" + std::to_string(i)});
  }
  if (vars > 2 && pick(2) == 0) {
    size_t s = pick(static_cast<size_t>(vars)), t = pick(static_cast<size_t>(vars));
    if (s != t)
      relations.push_back({"v" + std::to_string(s), kRoles[pick(role_pool)],
                           "v" + std::to_string(t)});
  }
  std::vector<Attribute> attributes;
  const size_t n_attr = pick(3);
  for (size_t k = 0; k < n_attr; ++k) {
    attributes.push_back({"v" + std::to_string(pick(static_cast<size_t>(vars))),
                          kAttrRoles[pick(kAttrRoles.size())], kValues[pick(kValues.size())]});
  }
  return AmrGraph::Create("v0", std::move(instances), std::move(attributes),
                          std::move(relations));
}

// Exact transport cost by enumerating the vertices of the transportation
// polytope: every basic solution is supported on a spanning tree of the
// bipartite graph, solved by peeling leaves.
inline double TransportByBasisEnumeration(const std::vector<std::vector<double>>& cost) {
  const size_t n = cost.size(), m = cost[0].size();
  const size_t cells = n * m, k = n + m - 1;
  double best = std::numeric_limits<double>::infinity();
  std::vector<bool> choose(cells, false);
  std::fill(choose.begin(), choose.begin() + static_cast<long>(k), true);
  do {
    std::vector<std::pair<size_t, size_t>> edges;
    for (size_t c = 0; c < cells; ++c) {
      if (choose[c]) edges.emplace_back(c / m, n + c % m);
    }
    std::vector<size_t> parent(n + m);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<size_t(size_t)> find = [&](size_t x) {
      return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    bool tree = true;
    for (auto [u, v] : edges) {
      size_t ru = find(u), rv = find(v);
      if (ru == rv) {
        tree = false;
        break;
      }
      parent[ru] = rv;
    }
    if (!tree) continue;
    std::vector<double> rest(n + m);
    for (size_t i = 0; i < n; ++i) rest[i] = 1.0 / static_cast<double>(n);
    for (size_t j = 0; j < m; ++j) rest[n + j] = 1.0 / static_cast<double>(m);
    std::vector<bool> done(edges.size(), false);
    std::vector<double> flow(edges.size(), 0.0);
    for (size_t step = 0; step < edges.size(); ++step) {
      std::vector<int> degree(n + m, 0);
      for (size_t e = 0; e < edges.size(); ++e) {
        if (!done[e]) {
          ++degree[edges[e].first];
          ++degree[edges[e].second];
        }
      }
      for (size_t e = 0; e < edges.size(); ++e) {
        if (done[e]) continue;
        auto [u, v] = edges[e];
        size_t leaf = degree[u] == 1 ? u : (degree[v] == 1 ? v : SIZE_MAX);
        if (leaf == SIZE_MAX) continue;
        const size_t other = leaf == u ? v : u;
        flow[e] = rest[leaf];
        rest[other] -= flow[e];
        rest[leaf] = 0.0;
        done[e] = true;
        break;
      }
    }
    bool feasible = std::all_of(flow.begin(), flow.end(), [](double f) { return f >= -1e-12; });
    if (!feasible) continue;
    double total = 0.0;
    for (size_t e = 0; e < edges.size(); ++e)
      total += flow[e] * cost[edges[e].first][edges[e].second - n];
    best = std::min(best, total);
  } while (std::prev_permutation(choose.begin(), choose.end()));
  return best;
}

// WL features with uncompressed string labels:
// label_k(v) = label_{k-1}(v) + "{" + sorted "role=label_{k-1}(u)" + "}".
inline std::map<std::pair<int, std::string>, int> WlStringFeatures(const AmrGraph& g, int k) {
  std::vector<std::string> labels;
  std::map<std::string, size_t> index;
  std::vector<std::vector<std::pair<std::string, size_t>>> adj;
  for (const auto& inst : g.instances()) {
    index[inst.variable] = labels.size();
    labels.push_back(inst.concept_label);
    adj.emplace_back();
  }
  for (const auto& r : g.relations()) {
    const std::string role = DirectRole(r.role);
    adj[index[r.source]].emplace_back(role, index[r.target]);
    adj[index[r.target]].emplace_back(role, index[r.source]);
  }
  for (const auto& a : g.attributes()) {
    const size_t node = labels.size();
    labels.push_back(a.value);
    adj.emplace_back();
    adj[index[a.source]].emplace_back(a.role, node);
    adj[node].emplace_back(a.role, index[a.source]);
  }
  std::map<std::pair<int, std::string>, int> features;
  for (const auto& l : labels) ++features[{0, l}];
  for (int it = 1; it <= k; ++it) {
    std::vector<std::string> next;
    for (size_t v = 0; v < labels.size(); ++v) {
      std::vector<std::string> parts;
      for (const auto& [role, u] : adj[v]) parts.push_back(role + "=" + labels[u]);
      std::sort(parts.begin(), parts.end());
      std::string s = labels[v] + "{";
      for (const auto& p : parts) s += p + ",";
      next.push_back(s + "}");
    }
    labels = std::move(next);
    for (const auto& l : labels) ++features[{it, l}];
  }
  return features;
}

inline double WlStringOracle(const AmrGraph& a, const AmrGraph& b, int k) {
  const auto fa = WlStringFeatures(a, k), fb = WlStringFeatures(b, k);
  double dot = 0, na = 0, nb = 0;
  for (const auto& [f, c] : fa) {
    na += c * c;
    if (auto it = fb.find(f); it != fb.end()) dot += c * it->second;
  }
  for (const auto& [f, c] : fb) nb += c * c;
  return dot / std::sqrt(na * nb);
}

}  // namespace amrmeter::testing

#endif  // AMRMETER_TESTS_TEST_SUPPORT_H_
