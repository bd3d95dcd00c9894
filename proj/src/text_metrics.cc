#include "amrmeter/text_metrics.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>

#include "amrmeter/logging.h"
#include "amrmeter/text.h"

namespace amrmeter {
namespace {

using NgramCounts = std::map<std::vector<std::string>, int>;

NgramCounts WordNgrams(const std::vector<std::string>& tokens, int n) {
  NgramCounts counts;
  const size_t un = static_cast<size_t>(n);
  for (size_t i = 0; i + un <= tokens.size(); ++i)
    ++counts[std::vector<std::string>(tokens.begin() + i, tokens.begin() + i + un)];
  return counts;
}

std::map<std::string, int> CharNgrams(const std::string& chars, int n) {
  std::map<std::string, int> counts;
  const size_t un = static_cast<size_t>(n);
  for (size_t i = 0; i + un <= chars.size(); ++i) ++counts[chars.substr(i, un)];
  return counts;
}

template <typename Counts>
int Total(const Counts& c) {
  int t = 0;
  for (const auto& [k, v] : c) t += v;
  return t;
}

template <typename Counts>
int ClippedOverlap(const Counts& hyp, const Counts& ref) {
  int m = 0;
  for (const auto& [k, v] : hyp) {
    auto it = ref.find(k);
    if (it != ref.end()) m += std::min(v, it->second);
  }
  return m;
}

double FScore(double p, double r, double beta) {
  const double b2 = beta * beta;
  if (p <= 0.0 && r <= 0.0) return 0.0;
  return (1.0 + b2) * p * r / (b2 * p + r);
}

std::string JoinWithoutSpaces(const std::vector<std::string>& tokens) {
  std::string s;
  for (const auto& t : tokens) s += t;
  return s;
}

}  // namespace

SentencePair SentencePair::FromRaw(std::string_view reference,
                                   std::string_view candidate) {
  return {std::string(reference), std::string(candidate), Tokenize(reference),
          Tokenize(candidate)};
}

// ---------------------------------------------------------------------------
// BLEU

MetricScore Bleu(const SentencePair& pair, int max_n) {
  MetricScore score{"bleu", 0.0, {}};
  if (max_n < 1) throw std::invalid_argument("bleu: max_n must be positive");
  const auto& hyp = pair.candidate;
  const auto& ref = pair.reference;
  if (hyp.empty()) {
    Warn("bleu: empty candidate, scoring 0");
    return score;
  }
  std::vector<int> numerators(static_cast<size_t>(max_n));
  std::vector<int> denominators(static_cast<size_t>(max_n));
  for (int n = 1; n <= max_n; ++n) {
    NgramCounts h = WordNgrams(hyp, n);
    NgramCounts r = WordNgrams(ref, n);
    numerators[n - 1] = ClippedOverlap(h, r);
    denominators[n - 1] = std::max(1, Total(h));
  }
  const double hyp_len = static_cast<double>(hyp.size());
  const double ref_len = static_cast<double>(ref.size());
  const double bp = hyp_len > ref_len ? 1.0 : std::exp(1.0 - ref_len / hyp_len);
  score.components["bp"] = bp;

  std::vector<double> p(static_cast<size_t>(max_n));
  int incvnt = 1;
  for (int i = 0; i < max_n; ++i) {
    if (numerators[i] == 0 && hyp.size() > 1) {
      const double smoothed =
          1.0 / (std::pow(2.0, incvnt) * kBleuSmoothingK / std::log(hyp_len));
      p[i] = smoothed / denominators[i];
      ++incvnt;
    } else {
      p[i] = static_cast<double>(numerators[i]) / denominators[i];
    }
    score.components["p" + std::to_string(i + 1)] = p[i];
  }
  // No unigram overlap, or an unsmoothable zero for one-token candidates.
  if (numerators[0] == 0 ||
      std::any_of(p.begin(), p.end(), [](double x) { return x <= 0.0; })) {
    return score;
  }
  double log_sum = 0.0;
  for (double pi : p) log_sum += std::log(pi) / max_n;
  score.value = bp * std::exp(log_sum);
  return score;
}

// ---------------------------------------------------------------------------
// chrF++

MetricScore ChrfPlusPlus(const SentencePair& pair, const ChrfOptions& options) {
  MetricScore score{"chrf++", 0.0, {}};
  const std::string hyp_chars = JoinWithoutSpaces(pair.candidate);
  const std::string ref_chars = JoinWithoutSpaces(pair.reference);

  std::vector<std::pair<double, double>> orders;  // (precision, recall)
  auto add_order = [&](int matches, int hyp_total, int ref_total) {
    if (hyp_total == 0 && ref_total == 0) return;
    double p = hyp_total > 0 ? static_cast<double>(matches) / hyp_total : 0.0;
    double r = ref_total > 0 ? static_cast<double>(matches) / ref_total : 0.0;
    orders.emplace_back(p, r);
  };
  for (int n = 1; n <= options.char_order; ++n) {
    auto h = CharNgrams(hyp_chars, n);
    auto r = CharNgrams(ref_chars, n);
    add_order(ClippedOverlap(h, r), Total(h), Total(r));
  }
  for (int n = 1; n <= options.word_order; ++n) {
    auto h = WordNgrams(pair.candidate, n);
    auto r = WordNgrams(pair.reference, n);
    add_order(ClippedOverlap(h, r), Total(h), Total(r));
  }
  if (orders.empty()) {
    // Both sides empty.
    score.value = 1.0;
    score.components = {{"precision", 1.0}, {"recall", 1.0}};
    return score;
  }
  double avg_p = 0.0, avg_r = 0.0, avg_f = 0.0;
  for (const auto& [p, r] : orders) {
    avg_p += p;
    avg_r += r;
    avg_f += FScore(p, r, options.beta);
  }
  const double k = static_cast<double>(orders.size());
  avg_p /= k;
  avg_r /= k;
  avg_f /= k;
  score.components["precision"] = avg_p;
  score.components["recall"] = avg_r;
  score.value = options.averaging == ChrfAveraging::kPerOrderF
                    ? avg_f
                    : FScore(avg_p, avg_r, options.beta);
  return score;
}

// ---------------------------------------------------------------------------
// Meteor-style alignment

void SynonymLexicon::Add(std::string_view a, std::string_view b) {
  std::string la = ToLower(a), lb = ToLower(b);
  if (la.empty() || lb.empty() || la == lb) return;
  entries_[la].insert(lb);
  entries_[lb].insert(la);
}

bool SynonymLexicon::AreSynonyms(std::string_view a, std::string_view b) const {
  auto it = entries_.find(std::string(a));
  return it != entries_.end() && it->second.contains(std::string(b));
}

SynonymLexicon LoadSynonymLexicon(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read synonym lexicon " + path.string());
  SynonymLexicon lexicon;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                               ": expected word<TAB>synonyms");
    std::string word = line.substr(0, tab);
    std::string rest = line.substr(tab + 1);
    size_t start = 0;
    while (start <= rest.size()) {
      size_t comma = rest.find(',', start);
      std::string syn = rest.substr(start, comma == std::string::npos
                                               ? std::string::npos
                                               : comma - start);
      auto first = syn.find_first_not_of(' ');
      auto last = syn.find_last_not_of(' ');
      if (first != std::string::npos)
        lexicon.Add(word, syn.substr(first, last - first + 1));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  return lexicon;
}

namespace {

enum class MatchStage { kExact = 0, kStem = 1, kSynonym = 2 };

struct Candidate {
  size_t ref_pos;
  MatchStage stage;
};

// Depth-first search over hypothesis positions. Objective, lexicographic:
// more matches, fewer chunks, fewer non-exact matches.
class AlignmentSearch {
 public:
  AlignmentSearch(std::vector<std::vector<Candidate>> candidates, size_t ref_size,
                  size_t budget)
      : candidates_(std::move(candidates)), used_(ref_size, false), budget_(budget) {
    remaining_.assign(candidates_.size() + 1, 0);
    for (size_t j = candidates_.size(); j-- > 0;)
      remaining_[j] = remaining_[j + 1] + (candidates_[j].empty() ? 0 : 1);
  }

  void Run() { Visit(0, 0, 0, 0, kNone); }

  int best_matches() const { return best_matches_; }
  int best_chunks() const { return best_chunks_; }

 private:
  static constexpr size_t kNone = static_cast<size_t>(-1);

  bool Better(int matches, int chunks, int inexact) const {
    if (matches != best_matches_) return matches > best_matches_;
    if (chunks != best_chunks_) return chunks < best_chunks_;
    return inexact < best_inexact_;
  }

  // `prev_ref` is the reference position matched by hypothesis j-1, or kNone.
  void Visit(size_t j, int matches, int chunks, int inexact, size_t prev_ref) {
    if (visited_++ > budget_ && best_matches_ >= 0) return;
    if (j == candidates_.size()) {
      if (Better(matches, chunks, inexact)) {
        best_matches_ = matches;
        best_chunks_ = chunks;
        best_inexact_ = inexact;
      }
      return;
    }
    const int bound = matches + remaining_[j];
    if (bound < best_matches_) return;
    if (bound == best_matches_ && chunks > best_chunks_) return;

    // Extending the current chunk first finds good alignments early.
    std::vector<Candidate> order = candidates_[j];
    std::stable_sort(order.begin(), order.end(), [&](const Candidate& a, const Candidate& b) {
      bool ea = prev_ref != kNone && a.ref_pos == prev_ref + 1;
      bool eb = prev_ref != kNone && b.ref_pos == prev_ref + 1;
      if (ea != eb) return ea;
      return a.stage < b.stage;
    });
    for (const Candidate& c : order) {
      if (used_[c.ref_pos]) continue;
      used_[c.ref_pos] = true;
      const bool extends = prev_ref != kNone && c.ref_pos == prev_ref + 1;
      Visit(j + 1, matches + 1, chunks + (extends ? 0 : 1),
            inexact + (c.stage == MatchStage::kExact ? 0 : 1), c.ref_pos);
      used_[c.ref_pos] = false;
    }
    Visit(j + 1, matches, chunks, inexact, kNone);
  }

  std::vector<std::vector<Candidate>> candidates_;
  std::vector<int> remaining_;
  std::vector<bool> used_;
  size_t budget_;
  size_t visited_ = 0;
  int best_matches_ = -1;
  int best_chunks_ = 0;
  int best_inexact_ = 0;
};

}  // namespace

MetricScore MeteorLite(const SentencePair& pair, const SynonymLexicon* lexicon,
                       const MeteorOptions& options) {
  MetricScore score{"meteor_lite", 0.0, {}};
  const auto& hyp = pair.candidate;
  const auto& ref = pair.reference;
  if (hyp.empty() || ref.empty()) return score;

  const Lemmatizer& lemmatizer = DefaultLemmatizer();
  std::vector<std::string> hyp_stem, ref_stem;
  for (const auto& t : hyp) hyp_stem.push_back(lemmatizer.Lemma(t));
  for (const auto& t : ref) ref_stem.push_back(lemmatizer.Lemma(t));

  std::vector<std::vector<Candidate>> candidates(hyp.size());
  for (size_t j = 0; j < hyp.size(); ++j) {
    for (size_t i = 0; i < ref.size(); ++i) {
      if (hyp[j] == ref[i]) {
        candidates[j].push_back({i, MatchStage::kExact});
      } else if (hyp_stem[j] == ref_stem[i]) {
        candidates[j].push_back({i, MatchStage::kStem});
      } else if (lexicon != nullptr &&
                 (lexicon->AreSynonyms(hyp[j], ref[i]) ||
                  lexicon->AreSynonyms(hyp_stem[j], ref_stem[i]))) {
        candidates[j].push_back({i, MatchStage::kSynonym});
      }
    }
  }
  AlignmentSearch search(std::move(candidates), ref.size(), options.search_budget);
  search.Run();
  const int matches = std::max(0, search.best_matches());
  const int chunks = search.best_chunks();
  score.components["matches"] = matches;
  score.components["chunks"] = chunks;
  if (matches == 0) return score;

  const double p = static_cast<double>(matches) / hyp.size();
  const double r = static_cast<double>(matches) / ref.size();
  const double fmean = p * r / (options.alpha * p + (1.0 - options.alpha) * r);
  const double frag = static_cast<double>(chunks) / matches;
  const double penalty = options.gamma * std::pow(frag, options.beta);
  score.components["precision"] = p;
  score.components["recall"] = r;
  score.components["fmean"] = fmean;
  score.components["penalty"] = penalty;
  score.value = fmean * (1.0 - penalty);
  return score;
}

// ---------------------------------------------------------------------------
// BERTScore-style greedy matching

MetricScore BertScore(std::span<const Vector> reference,
                      std::span<const Vector> candidate) {
  MetricScore score{"bertscore", 0.0, {}};
  if (reference.empty() || candidate.empty()) {
    score.components = {{"precision", 0.0}, {"recall", 0.0}, {"f1", 0.0}};
    return score;
  }
  std::vector<std::vector<double>> sim(candidate.size(),
                                       std::vector<double>(reference.size()));
  for (size_t j = 0; j < candidate.size(); ++j) {
    for (size_t i = 0; i < reference.size(); ++i)
      sim[j][i] = Cosine(candidate[j], reference[i]);
  }
  double precision = 0.0;
  for (size_t j = 0; j < candidate.size(); ++j)
    precision += *std::max_element(sim[j].begin(), sim[j].end());
  precision /= static_cast<double>(candidate.size());
  double recall = 0.0;
  for (size_t i = 0; i < reference.size(); ++i) {
    double best = sim[0][i];
    for (size_t j = 1; j < candidate.size(); ++j) best = std::max(best, sim[j][i]);
    recall += best;
  }
  recall /= static_cast<double>(reference.size());
  const double f1 =
      precision + recall > 0.0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
  score.value = f1;
  score.components = {{"precision", precision}, {"recall", recall}, {"f1", f1}};
  return score;
}

MetricScore BertScore(const ContextualEmbeddingStore& store, std::string_view case_id) {
  const auto* ref = store.Find(case_id, Side::kA);
  const auto* cand = store.Find(case_id, Side::kB);
  if (ref == nullptr || cand == nullptr) {
    throw EmbeddingError("contextual store has no embeddings for case " +
                         std::string(case_id) + (ref == nullptr ? " side A" : " side B"));
  }
  return BertScore(ref->vectors, cand->vectors);
}

}  // namespace amrmeter
