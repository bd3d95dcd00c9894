#include "amrmeter/graco.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "amrmeter/logging.h"
#include "amrmeter/text.h"

namespace amrmeter {
namespace {

ConnectivityScore MeanWeight(const CohesionGraph& graph) {
  ConnectivityScore score;
  score.edge_count = graph.edges.size();
  if (graph.edges.empty()) return score;
  double sum = 0.0;
  for (const auto& e : graph.edges) sum += e.weight;
  score.value = sum / static_cast<double>(graph.edges.size());
  return score;
}

TokenVector SpanVector(std::vector<TokenVector> parts) {
  if (parts.size() == 1) return std::move(parts.front());
  TokenVector out;
  std::vector<Vector> rows;
  bool all_exact = true, all_oov = true;
  for (auto& p : parts) {
    if (!out.token.empty()) {
      out.token += ' ';
      out.lemma += ' ';
    }
    out.token += p.token;
    out.lemma += p.lemma;
    all_exact = all_exact && p.provenance == Provenance::kExact;
    all_oov = all_oov && p.provenance == Provenance::kOovZero;
    rows.push_back(std::move(p.vector));
  }
  out.vector = MeanVector(rows);
  out.provenance = all_oov     ? Provenance::kOovZero
                   : all_exact ? Provenance::kExact
                               : Provenance::kLemmaFallback;
  return out;
}

std::map<std::string, int> LemmaCounts(const AmrGraph& g) {
  std::map<std::string, int> counts;
  for (const auto& c : g.ConceptNodes()) ++counts[c.lemma];
  return counts;
}

}  // namespace

std::vector<CohesionNode> StaticCohesionNodes(const ConceptAlignment& alignment,
                                              const std::vector<std::string>& tokens,
                                              const std::vector<std::string>& lemmas,
                                              const StaticEmbeddingTable& table) {
  std::vector<CohesionNode> nodes;
  for (const auto& link : alignment.links) {
    std::vector<TokenVector> parts;
    for (size_t i = link.begin; i < link.end; ++i)
      parts.push_back(Lookup(table, tokens[i], i < lemmas.size() ? lemmas[i] : tokens[i]));
    nodes.push_back({link.variable, SpanVector(std::move(parts))});
  }
  return nodes;
}

std::vector<CohesionNode> ContextualCohesionNodes(
    const ConceptAlignment& alignment, const ContextualEmbeddingStore::Sentence& sentence) {
  std::vector<CohesionNode> nodes;
  for (const auto& link : alignment.links) {
    std::vector<TokenVector> parts;
    for (size_t i = link.begin; i < link.end; ++i) {
      const Vector& row = sentence.vectors.at(i);
      const bool zero = std::all_of(row.begin(), row.end(), [](double x) { return x == 0.0; });
      parts.push_back({sentence.tokens.at(i), sentence.tokens.at(i), row,
                       zero ? Provenance::kOovZero : Provenance::kExact});
    }
    nodes.push_back({link.variable, SpanVector(std::move(parts))});
  }
  return nodes;
}

CohesionGraph BuildCohesionGraph(std::vector<CohesionNode> nodes, CohesionMode mode,
                                 const std::set<std::string>* differing) {
  if (mode == CohesionMode::kReduced && differing == nullptr)
    throw std::invalid_argument("reduced cohesion graph needs a differing set");
  CohesionGraph graph;
  graph.mode = mode;
  graph.nodes = std::move(nodes);
  const size_t n = graph.nodes.size();
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      if (mode == CohesionMode::kReduced &&
          !differing->contains(graph.nodes[i].variable) &&
          !differing->contains(graph.nodes[j].variable))
        continue;
      graph.edges.push_back(
          {i, j, Cosine(graph.nodes[i].vector.vector, graph.nodes[j].vector.vector)});
    }
  }
  return graph;
}

ConnectivityScore Connectivity(const CohesionGraph& graph) {
  if (graph.edges.empty() && graph.mode == CohesionMode::kFull)
    Warn("cohesion graph with " + std::to_string(graph.nodes.size()) +
         " node(s) has no edges; connectivity set to 1");
  return MeanWeight(graph);
}

std::pair<std::set<std::string>, std::set<std::string>> DifferingVariables(
    const AmrGraph& a, const AmrGraph& b) {
  const auto ca = LemmaCounts(a);
  const auto cb = LemmaCounts(b);
  auto count = [](const std::map<std::string, int>& m, const std::string& k) {
    auto it = m.find(k);
    return it == m.end() ? 0 : it->second;
  };
  std::pair<std::set<std::string>, std::set<std::string>> out;
  for (const auto& c : a.ConceptNodes()) {
    if (count(ca, c.lemma) != count(cb, c.lemma)) out.first.insert(c.variable);
  }
  for (const auto& c : b.ConceptNodes()) {
    if (count(ca, c.lemma) != count(cb, c.lemma)) out.second.insert(c.variable);
  }
  return out;
}

std::string GracoMetricId(const GracoVariant& variant) {
  std::string id = variant.embedding == GracoEmbedding::kStatic ? "graco_static"
                                                                 : "graco_contextual";
  if (variant.mode == CohesionMode::kReduced) id += "_reduced";
  return id;
}

MetricScore GracoScore(const TestCase& test_case, const GracoVariant& variant,
                       const GracoResources& resources) {
  MetricScore score{GracoMetricId(variant), 0.0, {}};
  if (variant.embedding == GracoEmbedding::kStatic && resources.table == nullptr)
    throw EmbeddingError(score.metric_id + " needs a static embedding table");
  if (variant.embedding == GracoEmbedding::kContextual && resources.store == nullptr)
    throw EmbeddingError(score.metric_id + " needs a contextual embedding store");

  const auto differing = DifferingVariables(test_case.amr_a, test_case.amr_b);
  CohesionGraph graphs[2];
  for (Side side : {Side::kA, Side::kB}) {
    const int s = side == Side::kA ? 0 : 1;
    const std::vector<AlignmentSpan>* external =
        resources.alignments ? resources.alignments->Find(test_case.id, side) : nullptr;
    std::vector<CohesionNode> nodes;
    if (variant.embedding == GracoEmbedding::kStatic) {
      ConceptAlignment alignment = AlignConcepts(test_case.tokens(side), test_case.lemmas(side),
                                                 test_case.amr(side), external);
      nodes = StaticCohesionNodes(alignment, test_case.tokens(side), test_case.lemmas(side),
                                  *resources.table);
    } else {
      const auto* sentence = resources.store->Find(test_case.id, side);
      if (sentence == nullptr)
        throw EmbeddingError("contextual store has no embeddings for case " + test_case.id +
                             " side " + std::string(SideName(side)));
      ConceptAlignment alignment;
      if (sentence->tokens.size() == test_case.tokens(side).size()) {
        alignment = AlignConcepts(test_case.tokens(side), test_case.lemmas(side),
                                  test_case.amr(side), external);
      } else {
        Warn("case " + test_case.id + " side " + std::string(SideName(side)) +
             ": stored tokens differ from the suite tokenization; aligning on stored tokens");
        std::vector<std::string> tokens, lemmas;
        for (const auto& t : sentence->tokens) {
          tokens.push_back(ToLower(t));
          lemmas.push_back(DefaultLemmatizer().Lemma(tokens.back()));
        }
        alignment = AlignConcepts(tokens, lemmas, test_case.amr(side), nullptr);
      }
      nodes = ContextualCohesionNodes(alignment, *sentence);
    }
    graphs[s] = BuildCohesionGraph(std::move(nodes), variant.mode,
                                   s == 0 ? &differing.first : &differing.second);
  }
  if (variant.mode == CohesionMode::kFull && graphs[0].edges.empty() &&
      graphs[1].edges.empty())
    Warn("case " + test_case.id + ": both cohesion graphs are empty; score set to 1");

  const ConnectivityScore cs_a = MeanWeight(graphs[0]);
  const ConnectivityScore cs_b = MeanWeight(graphs[1]);
  score.value = 1.0 - std::abs(cs_a.value - cs_b.value);
  score.components = {{"cs_a", cs_a.value},
                      {"cs_b", cs_b.value},
                      {"edges_a", static_cast<double>(cs_a.edge_count)},
                      {"edges_b", static_cast<double>(cs_b.edge_count)},
                      {"nodes_a", static_cast<double>(graphs[0].nodes.size())},
                      {"nodes_b", static_cast<double>(graphs[1].nodes.size())}};
  return score;
}

}  // namespace amrmeter
