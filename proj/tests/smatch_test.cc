#include <random>

#include <gtest/gtest.h>

#include "amrmeter/smatch.h"
#include "test_support.h"

namespace amrmeter {
namespace {

using testing::kBoyHits;
using testing::kChildHits;

StaticEmbeddingTable BoyChildTable(double boy_child_cosine) {
  // Unit vectors with the requested cosine between boy and child.
  StaticEmbeddingTable t(2);
  t.Add("boy", {1.0, 0.0});
  t.Add("child", {boy_child_cosine, std::sqrt(1.0 - boy_child_cosine * boy_child_cosine)});
  t.Add("baseball", {-1.0, 0.0});
  t.Add("hit", {0.0, -1.0});
  return t;
}

TEST(Smatch, IdentityIsOne) {
  const AmrGraph g = ParsePenman(testing::kCoordination);
  const MatchResult r = Smatch(g, g);
  EXPECT_DOUBLE_EQ(r.f1, 1.0);
  EXPECT_EQ(r.mapping.pairs.size(), g.variable_count());
}

TEST(Smatch, BoyChildFiveOfSix) {
  const AmrGraph a = ParsePenman(kBoyHits), b = ParsePenman(kChildHits);
  const MatchResult hill = Smatch(a, b);
  const MatchResult exact = SmatchExhaustive(a, b);
  EXPECT_EQ(exact.triples_a, 6u);
  EXPECT_DOUBLE_EQ(exact.matched_weight, 5.0);
  EXPECT_NEAR(exact.f1, 5.0 / 6.0, 1e-12);
  EXPECT_NEAR(hill.f1, 5.0 / 6.0, 1e-12);
  SmatchOptions no_root;
  no_root.include_root = false;
  EXPECT_NEAR(Smatch(a, b, no_root).f1, 4.0 / 5.0, 1e-12);
}

TEST(Smatch, DisjointGraphsOnlyRootArtifact) {
  const AmrGraph a = ParsePenman("(x / foo :ARG0 (y / bar))");
  const AmrGraph b = ParsePenman("(p / baz :mod (q / qux))");
  const MatchResult r = SmatchExhaustive(a, b);
  EXPECT_LE(r.f1, 2.0 / static_cast<double>(r.triples_a + r.triples_b) + 1e-12);
  EXPECT_DOUBLE_EQ(Smatch(a, b).f1, r.f1);
}

TEST(Smatch, PrecisionOverCandidateRecallOverReference) {
  const AmrGraph a = ParsePenman("(x / foo)");
  const AmrGraph b = ParsePenman("(x / foo :ARG0 (y / bar))");
  const MatchResult r = Smatch(a, b);
  EXPECT_DOUBLE_EQ(r.recall, 1.0);
  EXPECT_DOUBLE_EQ(r.precision, 2.0 / 4.0);
}

TEST(Smatch, InverseRolesCanonicalized) {
  const AmrGraph a = ParsePenman("(h / hit-01 :ARG0 (b / boy))");
  const AmrGraph b = ParsePenman("(b / boy :ARG0-of (h / hit-01))");
  SmatchOptions o;
  o.include_root = false;
  EXPECT_DOUBLE_EQ(Smatch(a, b, o).f1, 1.0);
  o.canonicalize_inverse = false;
  EXPECT_LT(Smatch(a, b, o).f1, 1.0);
}

TEST(SmatchExhaustive, RejectsLargeGraphs) {
  std::string text = "(v0 / a";
  for (int i = 1; i <= 8; ++i) text += " :mod (v" + std::to_string(i) + " / a)";
  text += ")";
  const AmrGraph big = ParsePenman(text);
  EXPECT_THROW(SmatchExhaustive(big, big), std::invalid_argument);
}

TEST(Smatch, DeterministicForSeed) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 30; ++i) {
    const AmrGraph a = testing::RandomGraph(rng, 6), b = testing::RandomGraph(rng, 6);
    SmatchOptions o;
    o.seed = 99;
    EXPECT_EQ(Smatch(a, b, o).matched_weight, Smatch(a, b, o).matched_weight);
  }
}

TEST(S2match, BoyChildGradedWeight) {
  const AmrGraph a = ParsePenman(kBoyHits), b = ParsePenman(kChildHits);
  const auto table = BoyChildTable(0.95);
  const MatchResult r = S2match(a, b, table);
  EXPECT_NEAR(r.matched_weight, 5.95, 1e-12);
  EXPECT_NEAR(r.f1, 5.95 / 6.0, 1e-12);
}

TEST(S2match, BelowCutoffEqualsSmatch) {
  const AmrGraph a = ParsePenman(kBoyHits), b = ParsePenman(kChildHits);
  const auto table = BoyChildTable(0.85);
  const MatchResult s2 = S2match(a, b, table), s = Smatch(a, b);
  EXPECT_EQ(s2.matched_weight, s.matched_weight);
  EXPECT_EQ(s2.f1, s.f1);
}

TEST(S2match, SenseCoefficient) {
  StaticEmbeddingTable table(2);
  S2matchOptions o;
  EXPECT_DOUBLE_EQ(ConceptSimilarity("run-01", "run-01", table, o), 1.0);
  EXPECT_DOUBLE_EQ(ConceptSimilarity("run-01", "run-02", table, o), 0.95);
  EXPECT_DOUBLE_EQ(ConceptSimilarity("run-01", "walk-01", table, o), 0.0);
  const AmrGraph a = ParsePenman("(r / run-01 :ARG0 (d / dog))");
  const AmrGraph b = ParsePenman("(r / run-02 :ARG0 (d / dog))");
  EXPECT_NEAR(S2match(a, b, table).matched_weight, 3.95, 1e-12);
}

TEST(S2match, IdentityIsOne) {
  const AmrGraph g = ParsePenman(kBoyHits);
  EXPECT_DOUBLE_EQ(S2match(g, g, BoyChildTable(0.95)).f1, 1.0);
}

TEST(MakeMatchResult, Bookkeeping) {
  const MatchResult r = MakeMatchResult(3.0, 4, 6);
  EXPECT_DOUBLE_EQ(r.precision, 0.5);
  EXPECT_DOUBLE_EQ(r.recall, 0.75);
  EXPECT_DOUBLE_EQ(r.f1, 0.6);
  EXPECT_DOUBLE_EQ(MakeMatchResult(0.0, 0, 0).f1, 0.0);
}

}  // namespace
}  // namespace amrmeter
