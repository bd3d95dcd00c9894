#include <random>

#include <gtest/gtest.h>

#include "amrmeter/measures.h"
#include "amrmeter/smatch.h"
#include "amrmeter/text_metrics.h"
#include "amrmeter/wasserstein.h"
#include "amrmeter/wl_kernel.h"
#include "test_support.h"

namespace amrmeter {
namespace {

using testing::RandomGraph;

constexpr int kPairs = 300;

int Vars(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

StaticEmbeddingTable LabelTable() {
  StaticEmbeddingTable t(3);
  t.Add("a", {1, 0, 0});
  t.Add("b", {0.95, 0.3122, 0});  // cos(a, b) just above 0.9
  t.Add("c", {0, 1, 0});
  t.Add("d", {0, 0, 1});
  return t;
}

std::vector<std::string> Shuffled(std::mt19937_64& rng, size_t n) {
  std::vector<std::string> names;
  for (size_t i = 0; i < n; ++i) names.push_back("r" + std::to_string(i * 7 + 3));
  std::shuffle(names.begin(), names.end(), rng);
  return names;
}

TEST(Properties, HillClimbNeverExceedsExhaustive) {
  std::mt19937_64 rng(101);
  int equal = 0;
  for (int i = 0; i < kPairs; ++i) {
    const AmrGraph a = RandomGraph(rng, Vars(rng, 1, 6));
    const AmrGraph b = RandomGraph(rng, Vars(rng, 1, 6));
    SmatchOptions options;
    options.seed = static_cast<uint64_t>(i);
    const MatchResult hill = Smatch(a, b, options);
    const MatchResult exact = SmatchExhaustive(a, b, options);
    EXPECT_LE(hill.matched_weight, exact.matched_weight + 1e-12);
    EXPECT_GE(hill.f1, 0.0);
    EXPECT_LE(exact.f1, 1.0);
    equal += hill.matched_weight == exact.matched_weight;
  }
  EXPECT_GE(equal, kPairs * 95 / 100);
}

TEST(Properties, ExhaustiveSmatchSymmetry) {
  std::mt19937_64 rng(102);
  for (int i = 0; i < kPairs; ++i) {
    const AmrGraph a = RandomGraph(rng, Vars(rng, 1, 5));
    const AmrGraph b = RandomGraph(rng, Vars(rng, 1, 5));
    const MatchResult ab = SmatchExhaustive(a, b);
    const MatchResult ba = SmatchExhaustive(b, a);
    EXPECT_EQ(ab.matched_weight, ba.matched_weight);
    EXPECT_DOUBLE_EQ(ab.f1, ba.f1);
    EXPECT_DOUBLE_EQ(ab.precision, ba.recall);
  }
}

TEST(Properties, IdentityScoresOne) {
  std::mt19937_64 rng(103);
  for (int i = 0; i < 100; ++i) {
    const AmrGraph a = RandomGraph(rng, Vars(rng, 1, 7));
    EXPECT_EQ(SmatchExhaustive(a, a).f1, 1.0);
    EXPECT_NEAR(WlkSimilarity(a, a), 1.0, 1e-12);
  }
}

TEST(Properties, S2matchDominatesSmatch) {
  const auto table = LabelTable();
  std::mt19937_64 rng(104);
  for (int i = 0; i < kPairs; ++i) {
    const AmrGraph a = RandomGraph(rng, Vars(rng, 1, 6));
    const AmrGraph b = RandomGraph(rng, Vars(rng, 1, 6));
    S2matchOptions options;
    options.smatch.seed = static_cast<uint64_t>(i);
    const MatchResult s = Smatch(a, b, options.smatch);
    const MatchResult s2 = S2match(a, b, table, options);
    EXPECT_GE(s2.matched_weight, s.matched_weight);
    EXPECT_LE(s2.f1, 1.0);
  }
}

TEST(Properties, S2matchEqualsSmatchBelowCutoff) {
  StaticEmbeddingTable orthogonal(3);
  orthogonal.Add("a", {1, 0, 0});
  orthogonal.Add("b", {0, 1, 0});
  orthogonal.Add("c", {0, 0, 1});
  std::mt19937_64 rng(105);
  for (int i = 0; i < kPairs; ++i) {
    const AmrGraph a = RandomGraph(rng, Vars(rng, 1, 6), {"a", "b", "c"});
    const AmrGraph b = RandomGraph(rng, Vars(rng, 1, 6), {"a", "b", "c"});
    S2matchOptions options;
    options.smatch.seed = static_cast<uint64_t>(i);
    EXPECT_EQ(S2match(a, b, orthogonal, options).f1, Smatch(a, b, options.smatch).f1);
  }
}

TEST(Properties, VariableNamesDoNotMatter) {
  const auto table = LabelTable();
  std::mt19937_64 rng(106);
  for (int i = 0; i < kPairs; ++i) {
    const AmrGraph a = RandomGraph(rng, Vars(rng, 1, 6));
    const AmrGraph b = RandomGraph(rng, Vars(rng, 1, 6));
    const AmrGraph a2 = a.RenameVariables(Shuffled(rng, a.variable_count()));
    EXPECT_EQ(SmatchExhaustive(a, b).matched_weight, SmatchExhaustive(a2, b).matched_weight);
    EXPECT_NEAR(WlkSimilarity(a, b), WlkSimilarity(a2, b), 1e-12);
    EXPECT_NEAR(WwlkDistance(a, b, table), WwlkDistance(a2, b, table), 1e-9);
  }
}

TEST(Properties, KernelSymmetryAndBounds) {
  const auto table = LabelTable();
  std::mt19937_64 rng(107);
  for (int i = 0; i < kPairs; ++i) {
    const AmrGraph a = RandomGraph(rng, Vars(rng, 1, 6));
    const AmrGraph b = RandomGraph(rng, Vars(rng, 1, 6));
    const double w = WlkSimilarity(a, b);
    EXPECT_EQ(w, WlkSimilarity(b, a));
    EXPECT_GE(w, 0.0);
    EXPECT_LE(w, 1.0 + 1e-12);
    const double d = WwlkDistance(a, b, table);
    EXPECT_EQ(d, WwlkDistance(b, a, table));
    EXPECT_GE(d, 0.0);
    const double s = WwlkSimilarity(a, b, table);
    EXPECT_GT(s, 0.0);
    EXPECT_LE(s, 1.0);
  }
}

TEST(Properties, InverseRolesCanonicalize) {
  std::mt19937_64 rng(108);
  for (int i = 0; i < 100; ++i) {
    const AmrGraph a = RandomGraph(rng, Vars(rng, 2, 6));
    const AmrGraph c = a.Canonicalized();
    EXPECT_EQ(SmatchExhaustive(a, c).f1, 1.0);
    EXPECT_NEAR(WlkSimilarity(a, c), 1.0, 1e-12);
  }
}

std::string RandomSentence(std::mt19937_64& rng) {
  static const std::vector<std::string> words = {"a",   "boy",  "is",   "hitting", "the",
                                                 "dog", "cat",  "runs", "not",     "ball"};
  std::string s;
  const int n = std::uniform_int_distribution<int>(1, 9)(rng);
  for (int i = 0; i < n; ++i) {
    if (i) s += ' ';
    s += words[std::uniform_int_distribution<size_t>(0, words.size() - 1)(rng)];
  }
  return s;
}

TEST(Properties, TextMetricBounds) {
  std::mt19937_64 rng(109);
  for (int i = 0; i < kPairs; ++i) {
    const std::string r = RandomSentence(rng), c = RandomSentence(rng);
    const auto pair = SentencePair::FromRaw(r, c);
    for (const MetricScore& m :
         {Bleu(pair), ChrfPlusPlus(pair), MeteorLite(pair, nullptr)}) {
      EXPECT_GE(m.value, 0.0) << m.metric_id << " " << r << " | " << c;
      EXPECT_LE(m.value, 1.0) << m.metric_id << " " << r << " | " << c;
    }
    EXPECT_NEAR(ChrfPlusPlus(SentencePair::FromRaw(r, r)).value, 1.0, 1e-12);
    EXPECT_GE(MeteorLite(SentencePair::FromRaw(r, r), nullptr).value,
              MeteorLite(pair, nullptr).value - 1e-12);
  }
}

TEST(Properties, NormalizationAndRanking) {
  std::mt19937_64 rng(110);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int i = 0; i < 200; ++i) {
    const size_t n = std::uniform_int_distribution<size_t>(2, 15)(rng);
    std::vector<double> m(n), h(n);
    for (size_t k = 0; k < n; ++k) {
      m[k] = u(rng);
      h[k] = std::round(u(rng));
    }
    const auto nm = Normalize(Standardize(m));
    EXPECT_EQ(*std::min_element(nm.begin(), nm.end()), 0.0);
    EXPECT_NEAR(*std::max_element(nm.begin(), nm.end()), 1.0, 1e-12);
    std::vector<double> cubed = m;
    for (double& x : cubed) x = x * x * x + 2;
    const auto r1 = SpearmanRho(m, h), r2 = SpearmanRho(cubed, h);
    ASSERT_EQ(r1.has_value(), r2.has_value());
    if (r1) EXPECT_NEAR(*r1, *r2, 1e-12);
    const double tau = ComputeTau(nm, TauRule::kScorePercentile);
    const double rank = *PairwiseRankingScore(nm, Normalize(Standardize(h)), tau);
    EXPECT_GE(rank, 0.0);
    EXPECT_LE(rank, 1.0);
  }
}

}  // namespace
}  // namespace amrmeter
