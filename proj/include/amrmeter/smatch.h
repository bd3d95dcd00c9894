#ifndef AMRMETER_SMATCH_H_
#define AMRMETER_SMATCH_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "amrmeter/amr.h"
#include "amrmeter/embeddings.h"

namespace amrmeter {

// Partial injective map from variables of graph A to variables of graph B.
struct VariableMapping {
  std::vector<std::pair<std::string, std::string>> pairs;
};

struct MatchResult {
  double matched_weight = 0.0;
  size_t triples_a = 0;
  size_t triples_b = 0;
  // Graph A is the reference: precision is over B's triples, recall over A's.
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  VariableMapping mapping;
};

struct SmatchOptions {
  int restarts = 4;  // smart start plus restarts-1 random starts
  uint64_t seed = 0;
  bool include_root = true;
  bool canonicalize_inverse = true;
};

// Hill-climbing Smatch. Deterministic for a given seed.
MatchResult Smatch(const AmrGraph& a, const AmrGraph& b,
                   const SmatchOptions& options = {});

inline constexpr size_t kExhaustiveVariableLimit = 8;

// Global optimum over all partial injective mappings by enumeration. Counts
// matches by mapping A's triples into B's namespace and intersecting the
// triple sets, independent of the hill climber's weight tables. Throws
// std::invalid_argument if either graph exceeds kExhaustiveVariableLimit
// variables.
MatchResult SmatchExhaustive(const AmrGraph& a, const AmrGraph& b,
                             const SmatchOptions& options = {});

struct S2matchOptions {
  SmatchOptions smatch;
  double cutoff = 0.9;
  double sense_coefficient = 0.95;
};

// Graded credit for instance triples whose concepts differ:
//   same lemma, different sense  -> sense_coefficient
//   otherwise cosine(lemma vectors) if it reaches the cutoff, else 0.
double ConceptSimilarity(const std::string& concept_a, const std::string& concept_b,
                         const StaticEmbeddingTable& table, const S2matchOptions& options);

// S2match. The search also starts from the binary Smatch optimum, so the
// matched weight never falls below Smatch's.
MatchResult S2match(const AmrGraph& a, const AmrGraph& b,
                    const StaticEmbeddingTable& table,
                    const S2matchOptions& options = {});

// F-score bookkeeping shared by all variants.
MatchResult MakeMatchResult(double matched_weight, size_t triples_a, size_t triples_b);

}  // namespace amrmeter

#endif  // AMRMETER_SMATCH_H_
