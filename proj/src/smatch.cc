#include "amrmeter/smatch.h"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

namespace amrmeter {
namespace {

using ConceptSimilarityFn =
    std::function<double(const std::string&, const std::string&)>;

// Triples of one graph, deduplicated, with variables replaced by indices.
struct IndexedTriples {
  std::vector<std::string> variables;
  std::vector<std::pair<size_t, std::string>> instances;  // (var, concept)
  std::vector<std::tuple<size_t, std::string, std::string>> attributes;
  std::vector<std::tuple<size_t, std::string, size_t>> relations;

  size_t size() const { return instances.size() + attributes.size() + relations.size(); }
};

AmrGraph Prepare(const AmrGraph& g, bool canonicalize) {
  return canonicalize ? g.Canonicalized() : g;
}

IndexedTriples IndexTriples(const AmrGraph& g, bool include_root) {
  IndexedTriples out;
  std::map<std::string, size_t> index;
  for (const auto& inst : g.instances()) {
    index[inst.variable] = out.variables.size();
    out.variables.push_back(inst.variable);
  }
  std::set<Triple> seen;
  for (const Triple& t : g.Triples(include_root)) {
    if (!seen.insert(t).second) continue;
    switch (t.kind) {
      case TripleKind::kInstance:
        out.instances.emplace_back(index.at(t.source), t.target);
        break;
      case TripleKind::kAttribute:
        out.attributes.emplace_back(index.at(t.source), t.role, t.target);
        break;
      case TripleKind::kRelation:
        out.relations.emplace_back(index.at(t.source), t.role, index.at(t.target));
        break;
    }
  }
  return out;
}

// Weight tables for the hill climber, in the style of the reference Smatch
// candidate pool: single-variable weights from instance and attribute
// triples, pairwise weights from relation triples.
class MatchProblem {
 public:
  MatchProblem(const IndexedTriples& a, const IndexedTriples& b,
               const ConceptSimilarityFn& concept_similarity)
      : n_(a.variables.size()), m_(b.variables.size()),
        unary_(n_, std::vector<double>(m_, 0.0)), pairs_(n_ * m_),
        concept_equal_(n_, std::vector<bool>(m_, false)) {
    for (const auto& [i, ca] : a.instances) {
      for (const auto& [j, cb] : b.instances) {
        if (ca == cb) {
          unary_[i][j] += 1.0;
          concept_equal_[i][j] = true;
        } else {
          unary_[i][j] += concept_similarity(ca, cb);
        }
      }
    }
    for (const auto& [i, ra, va] : a.attributes) {
      for (const auto& [j, rb, vb] : b.attributes) {
        if (ra == rb && va == vb) unary_[i][j] += 1.0;
      }
    }
    for (const auto& [i1, ra, i2] : a.relations) {
      for (const auto& [j1, rb, j2] : b.relations) {
        if (ra != rb) continue;
        if (i1 == i2 && j1 == j2) {
          unary_[i1][j1] += 1.0;
        } else if (i1 != i2 && j1 != j2) {
          pairs_[i1 * m_ + j1].push_back({i2, j2, 1.0});
          pairs_[i2 * m_ + j2].push_back({i1, j1, 1.0});
        }
      }
    }
  }

  double Score(const std::vector<int>& map) const {
    double unary = 0.0, pairwise = 0.0;
    for (size_t i = 0; i < n_; ++i) {
      if (map[i] < 0) continue;
      const size_t j = static_cast<size_t>(map[i]);
      unary += unary_[i][j];
      for (const PairWeight& p : pairs_[i * m_ + j]) {
        if (map[p.i] == static_cast<int>(p.j)) pairwise += p.weight;
      }
    }
    return unary + pairwise / 2.0;
  }

  // Greedy concept-match assignment; leftover variables take the free
  // target with the highest single-variable weight.
  std::vector<int> SmartStart() const {
    std::vector<int> map(n_, -1);
    std::vector<bool> used(m_, false);
    for (size_t i = 0; i < n_; ++i) {
      for (size_t j = 0; j < m_; ++j) {
        if (!used[j] && concept_equal_[i][j]) {
          map[i] = static_cast<int>(j);
          used[j] = true;
          break;
        }
      }
    }
    for (size_t i = 0; i < n_; ++i) {
      if (map[i] >= 0) continue;
      int best = -1;
      double best_w = -1.0;
      for (size_t j = 0; j < m_; ++j) {
        if (!used[j] && unary_[i][j] > best_w) {
          best = static_cast<int>(j);
          best_w = unary_[i][j];
        }
      }
      if (best >= 0) {
        map[i] = best;
        used[static_cast<size_t>(best)] = true;
      }
    }
    return map;
  }

  std::vector<int> RandomStart(std::mt19937_64& rng) const {
    std::vector<int> targets(m_);
    for (size_t j = 0; j < m_; ++j) targets[j] = static_cast<int>(j);
    std::shuffle(targets.begin(), targets.end(), rng);
    std::vector<int> map(n_, -1);
    std::vector<size_t> order(n_);
    for (size_t i = 0; i < n_; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    for (size_t k = 0; k < n_ && k < m_; ++k) map[order[k]] = targets[k];
    return map;
  }

  // Steepest ascent over single reassignments and pairwise swaps until no
  // move improves the score.
  std::vector<int> Climb(std::vector<int> map, double* score) const {
    double current = Score(map);
    while (true) {
      std::vector<bool> used(m_, false);
      for (int j : map) {
        if (j >= 0) used[static_cast<size_t>(j)] = true;
      }
      double best_gain = 0.0;
      std::vector<int> best_map;
      auto consider = [&](std::vector<int>& candidate) {
        double s = Score(candidate);
        if (s - current > best_gain + 1e-12) {
          best_gain = s - current;
          best_map = candidate;
        }
      };
      std::vector<int> trial = map;
      for (size_t i = 0; i < n_; ++i) {
        const int old = trial[i];
        for (size_t j = 0; j < m_; ++j) {
          if (used[j]) continue;
          trial[i] = static_cast<int>(j);
          consider(trial);
        }
        trial[i] = old;
      }
      for (size_t i = 0; i < n_; ++i) {
        for (size_t k = i + 1; k < n_; ++k) {
          if (trial[i] == trial[k]) continue;  // both unmapped
          std::swap(trial[i], trial[k]);
          consider(trial);
          std::swap(trial[i], trial[k]);
        }
      }
      if (best_map.empty()) break;
      map = std::move(best_map);
      current = Score(map);
    }
    *score = current;
    return map;
  }

 private:
  struct PairWeight {
    size_t i;
    size_t j;
    double weight;
  };

  size_t n_;
  size_t m_;
  std::vector<std::vector<double>> unary_;
  std::vector<std::vector<PairWeight>> pairs_;
  std::vector<std::vector<bool>> concept_equal_;
};

VariableMapping ToMapping(const std::vector<int>& map, const IndexedTriples& a,
                          const IndexedTriples& b) {
  VariableMapping out;
  for (size_t i = 0; i < map.size(); ++i) {
    if (map[i] >= 0)
      out.pairs.emplace_back(a.variables[i], b.variables[static_cast<size_t>(map[i])]);
  }
  return out;
}

struct ClimbOutcome {
  std::vector<int> map;
  double score = -1.0;
};

ClimbOutcome RunRestarts(const MatchProblem& problem, const SmatchOptions& options,
                         const std::vector<std::vector<int>>& extra_starts) {
  std::mt19937_64 rng(options.seed);
  ClimbOutcome best;
  auto run = [&](std::vector<int> start) {
    double s = 0.0;
    std::vector<int> end = problem.Climb(std::move(start), &s);
    if (s > best.score) {
      best.score = s;
      best.map = std::move(end);
    }
  };
  run(problem.SmartStart());
  for (int r = 1; r < options.restarts; ++r) run(problem.RandomStart(rng));
  for (const auto& start : extra_starts) run(start);
  return best;
}

// The search runs in a fixed orientation (the graph with the smaller triple
// list first), so swapping the arguments only swaps precision and recall.
MatchResult Solve(const AmrGraph& a_in, const AmrGraph& b_in, const SmatchOptions& options,
                  const ConceptSimilarityFn& similarity,
                  const std::vector<std::vector<int>>& extra_starts,
                  std::vector<int>* best_map) {
  const AmrGraph pa = Prepare(a_in, options.canonicalize_inverse);
  const AmrGraph pb = Prepare(b_in, options.canonicalize_inverse);
  const bool swap = pb.Triples(options.include_root) < pa.Triples(options.include_root);
  const IndexedTriples a = IndexTriples(swap ? pb : pa, options.include_root);
  const IndexedTriples b = IndexTriples(swap ? pa : pb, options.include_root);
  ConceptSimilarityFn oriented = similarity;
  if (swap) oriented = [&](const std::string& x, const std::string& y) { return similarity(y, x); };
  MatchProblem problem(a, b, oriented);
  ClimbOutcome outcome = RunRestarts(problem, options, extra_starts);
  MatchResult result = swap ? MakeMatchResult(outcome.score, b.size(), a.size())
                            : MakeMatchResult(outcome.score, a.size(), b.size());
  result.mapping = ToMapping(outcome.map, a, b);
  if (swap) {
    for (auto& [x, y] : result.mapping.pairs) std::swap(x, y);
  }
  if (best_map != nullptr) *best_map = outcome.map;
  return result;
}

}  // namespace

MatchResult MakeMatchResult(double matched_weight, size_t triples_a, size_t triples_b) {
  MatchResult r;
  r.matched_weight = matched_weight;
  r.triples_a = triples_a;
  r.triples_b = triples_b;
  r.precision = triples_b > 0 ? matched_weight / static_cast<double>(triples_b) : 0.0;
  r.recall = triples_a > 0 ? matched_weight / static_cast<double>(triples_a) : 0.0;
  const double denom = static_cast<double>(triples_a + triples_b);
  r.f1 = denom > 0 ? 2.0 * matched_weight / denom : 0.0;
  return r;
}

MatchResult Smatch(const AmrGraph& a, const AmrGraph& b, const SmatchOptions& options) {
  auto binary = [](const std::string&, const std::string&) { return 0.0; };
  return Solve(a, b, options, binary, {}, nullptr);
}

MatchResult SmatchExhaustive(const AmrGraph& a_in, const AmrGraph& b_in,
                             const SmatchOptions& options) {
  if (a_in.variable_count() > kExhaustiveVariableLimit ||
      b_in.variable_count() > kExhaustiveVariableLimit) {
    throw std::invalid_argument("exhaustive smatch supports at most " +
                                std::to_string(kExhaustiveVariableLimit) +
                                " variables per graph");
  }
  const AmrGraph a = Prepare(a_in, options.canonicalize_inverse);
  const AmrGraph b = Prepare(b_in, options.canonicalize_inverse);
  const std::vector<Triple> ta_list = a.Triples(options.include_root);
  const std::vector<Triple> tb_list = b.Triples(options.include_root);
  const std::set<Triple> ta(ta_list.begin(), ta_list.end());
  const std::set<Triple> tb(tb_list.begin(), tb_list.end());

  std::vector<std::string> a_vars, b_vars;
  for (const auto& i : a.instances()) a_vars.push_back(i.variable);
  for (const auto& i : b.instances()) b_vars.push_back(i.variable);

  // Unmapped A variables get a name no B variable can have.
  auto count_matches = [&](const std::vector<int>& map) {
    std::map<std::string, std::string> rename;
    for (size_t i = 0; i < a_vars.size(); ++i) {
      rename[a_vars[i]] = map[i] >= 0 ? b_vars[static_cast<size_t>(map[i])]
                                      : std::string("\x01unmapped") + std::to_string(i);
    }
    size_t matched = 0;
    for (const Triple& t : ta) {
      Triple mapped = t;
      mapped.source = rename.at(t.source);
      if (t.kind == TripleKind::kRelation) mapped.target = rename.at(t.target);
      if (tb.contains(mapped)) ++matched;
    }
    return matched;
  };

  std::vector<int> map(a_vars.size(), -1);
  std::vector<bool> used(b_vars.size(), false);
  std::vector<int> best_map = map;
  size_t best = count_matches(map);
  std::function<void(size_t)> recurse = [&](size_t i) {
    if (i == a_vars.size()) {
      size_t m = count_matches(map);
      if (m > best) {
        best = m;
        best_map = map;
      }
      return;
    }
    for (size_t j = 0; j < b_vars.size(); ++j) {
      if (used[j]) continue;
      used[j] = true;
      map[i] = static_cast<int>(j);
      recurse(i + 1);
      used[j] = false;
    }
    map[i] = -1;
    recurse(i + 1);
  };
  recurse(0);

  MatchResult result = MakeMatchResult(static_cast<double>(best), ta.size(), tb.size());
  for (size_t i = 0; i < best_map.size(); ++i) {
    if (best_map[i] >= 0)
      result.mapping.pairs.emplace_back(a_vars[i], b_vars[static_cast<size_t>(best_map[i])]);
  }
  return result;
}

double ConceptSimilarity(const std::string& concept_a, const std::string& concept_b,
                         const StaticEmbeddingTable& table, const S2matchOptions& options) {
  if (concept_a == concept_b) return 1.0;
  const ConceptNode na = SplitConcept("", concept_a);
  const ConceptNode nb = SplitConcept("", concept_b);
  double similarity = 0.0;
  if (na.lemma == nb.lemma) {
    similarity = options.sense_coefficient;
  } else {
    const Vector* va = table.Find(na.lemma);
    const Vector* vb = table.Find(nb.lemma);
    if (va != nullptr && vb != nullptr) similarity = Cosine(*va, *vb);
  }
  return similarity >= options.cutoff ? similarity : 0.0;
}

MatchResult S2match(const AmrGraph& a, const AmrGraph& b, const StaticEmbeddingTable& table,
                    const S2matchOptions& options) {
  auto binary = [](const std::string&, const std::string&) { return 0.0; };
  std::vector<int> binary_best;
  Solve(a, b, options.smatch, binary, {}, &binary_best);
  auto graded = [&](const std::string& ca, const std::string& cb) {
    return ConceptSimilarity(ca, cb, table, options);
  };
  return Solve(a, b, options.smatch, graded, {binary_best}, nullptr);
}

}  // namespace amrmeter
