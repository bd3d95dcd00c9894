#ifndef AMRMETER_TEXT_METRICS_H_
#define AMRMETER_TEXT_METRICS_H_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "amrmeter/embeddings.h"
#include "amrmeter/metric_score.h"

namespace amrmeter {

// Reference and candidate sentence, raw and tokenized with Tokenize().
struct SentencePair {
  std::string reference_raw;
  std::string candidate_raw;
  std::vector<std::string> reference;
  std::vector<std::string> candidate;

  static SentencePair FromRaw(std::string_view reference, std::string_view candidate);
};

// Sentence BLEU with uniform weights and Chen & Cherry smoothing method 4 as
// implemented in NLTK: the k-th zero precision becomes
// 1 / (2^k * K / ln(len(candidate))) / denominator, K = 5.
// Components: "p1".."pN", "bp".
MetricScore Bleu(const SentencePair& pair, int max_n = 4);

inline constexpr double kBleuSmoothingK = 5.0;

enum class ChrfAveraging {
  kPerOrderF,    // mean of per-order F-scores
  kAveragedPR,   // F-score of the averaged precision and recall
};

struct ChrfOptions {
  int char_order = 6;
  int word_order = 2;
  double beta = 2.0;
  ChrfAveraging averaging = ChrfAveraging::kPerOrderF;
};

// chrF++: character n-grams (whitespace removed) plus word n-grams. Orders
// for which neither side has an n-gram are left out of the average.
// Components: "precision", "recall" (averaged over orders).
MetricScore ChrfPlusPlus(const SentencePair& pair, const ChrfOptions& options = {});

// word -> synonyms, symmetric.
class SynonymLexicon {
 public:
  void Add(std::string_view a, std::string_view b);
  bool AreSynonyms(std::string_view a, std::string_view b) const;
  size_t size() const { return entries_.size(); }

 private:
  std::unordered_map<std::string, std::unordered_set<std::string>> entries_;
};

// Lines "word<TAB>syn1,syn2,...". Throws std::runtime_error if unreadable
// or a line has no tab.
SynonymLexicon LoadSynonymLexicon(const std::filesystem::path& path);

struct MeteorOptions {
  double alpha = 0.9;
  double beta = 3.0;
  double gamma = 0.5;
  // Alignment search budget in visited states; past it the best alignment
  // found so far is used.
  size_t search_budget = 200000;
};

// Simplified Meteor: unigram alignment over exact, stem and lexicon-synonym
// matches, maximizing matches and then minimizing chunks. All stages weigh
// 1. Components: "precision", "recall", "fmean", "penalty", "chunks",
// "matches".
MetricScore MeteorLite(const SentencePair& pair, const SynonymLexicon* lexicon,
                       const MeteorOptions& options = {});

// Greedy cosine matching without IDF weighting. Components: "precision",
// "recall", "f1"; value is F1.
MetricScore BertScore(std::span<const Vector> reference,
                      std::span<const Vector> candidate);

// Looks up side A as reference and side B as candidate. Throws
// EmbeddingError if either side is missing.
MetricScore BertScore(const ContextualEmbeddingStore& store, std::string_view case_id);

}  // namespace amrmeter

#endif  // AMRMETER_TEXT_METRICS_H_
