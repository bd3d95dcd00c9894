#include "amrmeter/wl_kernel.h"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace amrmeter {

LabeledGraph ToLabeledGraph(const AmrGraph& graph, bool canonicalize_inverse) {
  const AmrGraph g = canonicalize_inverse ? graph.Canonicalized() : graph;
  LabeledGraph out;
  std::unordered_map<std::string, size_t> index;
  for (const auto& inst : g.instances()) {
    index[inst.variable] = out.labels.size();
    out.labels.push_back(inst.concept_label);
    out.variables.push_back(inst.variable);
  }
  out.adjacency.resize(out.labels.size());
  auto connect = [&](size_t u, size_t v, const std::string& role) {
    out.adjacency[u].push_back({v, role});
    out.adjacency[v].push_back({u, role});
  };
  for (const auto& r : g.relations()) connect(index.at(r.source), index.at(r.target), r.role);
  for (const auto& a : g.attributes()) {
    const size_t node = out.labels.size();
    out.labels.push_back(a.value);
    out.variables.emplace_back();
    out.adjacency.emplace_back();
    connect(index.at(a.source), node, a.role);
  }
  return out;
}

std::pair<std::map<std::pair<int, int>, int>, std::map<std::pair<int, int>, int>>
WlFeatureCounts(const AmrGraph& a, const AmrGraph& b, const WlOptions& options) {
  const LabeledGraph ga = ToLabeledGraph(a, options.canonicalize_inverse);
  const LabeledGraph gb = ToLabeledGraph(b, options.canonicalize_inverse);
  const LabeledGraph* graphs[2] = {&ga, &gb};

  // Iteration 0: initial labels.
  std::map<std::string, int> dictionary;
  std::vector<int> labels[2];
  for (int g = 0; g < 2; ++g) {
    for (const std::string& l : graphs[g]->labels) {
      auto [it, inserted] = dictionary.try_emplace(l, static_cast<int>(dictionary.size()));
      labels[g].push_back(it->second);
    }
  }
  std::map<std::pair<int, int>, int> counts[2];
  for (int g = 0; g < 2; ++g) {
    for (int l : labels[g]) ++counts[g][{0, l}];
  }

  for (int k = 1; k <= options.iterations; ++k) {
    std::map<std::pair<int, std::vector<std::pair<std::string, int>>>, int> signatures;
    std::vector<int> next[2];
    for (int g = 0; g < 2; ++g) {
      const LabeledGraph& lg = *graphs[g];
      for (size_t v = 0; v < lg.labels.size(); ++v) {
        std::vector<std::pair<std::string, int>> neighborhood;
        for (const auto& e : lg.adjacency[v]) {
          neighborhood.emplace_back(options.use_edge_labels ? e.role : std::string(),
                                    labels[g][e.neighbor]);
        }
        std::sort(neighborhood.begin(), neighborhood.end());
        auto key = std::make_pair(labels[g][v], std::move(neighborhood));
        auto [it, inserted] =
            signatures.try_emplace(std::move(key), static_cast<int>(signatures.size()));
        next[g].push_back(it->second);
      }
    }
    for (int g = 0; g < 2; ++g) {
      labels[g] = std::move(next[g]);
      for (int l : labels[g]) ++counts[g][{k, l}];
    }
  }
  return {std::move(counts[0]), std::move(counts[1])};
}

double WlkSimilarity(const AmrGraph& a, const AmrGraph& b, const WlOptions& options) {
  auto [fa, fb] = WlFeatureCounts(a, b, options);
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (const auto& [key, c] : fa) {
    na += static_cast<double>(c) * c;
    auto it = fb.find(key);
    if (it != fb.end()) dot += static_cast<double>(c) * it->second;
  }
  for (const auto& [key, c] : fb) nb += static_cast<double>(c) * c;
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::min(1.0, dot / std::sqrt(na * nb));
}

}  // namespace amrmeter
