#ifndef AMRMETER_WL_KERNEL_H_
#define AMRMETER_WL_KERNEL_H_

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "amrmeter/amr.h"

namespace amrmeter {

// Undirected, role-labeled view of an AMR graph. Variables become nodes
// labeled with their concept; every attribute triple adds a constant node
// labeled with its value.
struct LabeledGraph {
  struct Edge {
    size_t neighbor;
    std::string role;
  };
  std::vector<std::string> labels;
  std::vector<std::string> variables;  // empty for constant nodes
  std::vector<std::vector<Edge>> adjacency;
};

LabeledGraph ToLabeledGraph(const AmrGraph& graph, bool canonicalize_inverse);

struct WlOptions {
  int iterations = 2;
  bool use_edge_labels = true;
  bool canonicalize_inverse = true;
};

// Label histograms of both graphs over iterations 0..K, with label ids
// compressed jointly so equal neighbourhoods get equal ids. Keys are
// (iteration, label id).
std::pair<std::map<std::pair<int, int>, int>, std::map<std::pair<int, int>, int>>
WlFeatureCounts(const AmrGraph& a, const AmrGraph& b, const WlOptions& options = {});

// Cosine of the two WL feature count vectors.
double WlkSimilarity(const AmrGraph& a, const AmrGraph& b, const WlOptions& options = {});

}  // namespace amrmeter

#endif  // AMRMETER_WL_KERNEL_H_
