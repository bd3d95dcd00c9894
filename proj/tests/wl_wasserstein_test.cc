#include <random>

#include <gtest/gtest.h>

#include "amrmeter/wasserstein.h"
#include "amrmeter/wl_kernel.h"
#include "test_support.h"

namespace amrmeter {
namespace {

using testing::kBoyHits;
using testing::kChildHits;

TEST(Wlk, IdentityAndDisjoint) {
  const AmrGraph g = ParsePenman(testing::kCoordination);
  EXPECT_DOUBLE_EQ(WlkSimilarity(g, g), 1.0);
  EXPECT_DOUBLE_EQ(WlkSimilarity(ParsePenman("(a / x :ARG0 (b / y))"),
                                 ParsePenman("(c / p :mod (d / q))")),
                   0.0);
}

TEST(Wlk, BoyChildByHand) {
  // Shared features: hit and baseball at iteration 0, baseball at iteration 1
  // (its only neighbour is hit in both graphs). Nine features per graph.
  const AmrGraph a = ParsePenman(kBoyHits), b = ParsePenman(kChildHits);
  EXPECT_NEAR(testing::WlStringOracle(a, b, 2), 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(WlkSimilarity(a, b), 1.0 / 3.0, 1e-12);
}

TEST(Wlk, MatchesStringOracleOnGeneratedGraphs) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 300; ++i) {
    const AmrGraph a = testing::RandomGraph(rng, 1 + static_cast<int>(rng() % 6));
    const AmrGraph b = testing::RandomGraph(rng, 1 + static_cast<int>(rng() % 6));
    for (int k : {0, 1, 2, 3}) {
      WlOptions o;
      o.iterations = k;
      EXPECT_NEAR(WlkSimilarity(a, b, o), testing::WlStringOracle(a, b, k), 1e-12);
    }
  }
}

TEST(Wlk, EdgeLabelsMatter) {
  const AmrGraph a = ParsePenman("(h / hit-01 :ARG0 (b / boy))");
  const AmrGraph b = ParsePenman("(h / hit-01 :ARG1 (b / boy))");
  EXPECT_LT(WlkSimilarity(a, b), 1.0);
  WlOptions o;
  o.use_edge_labels = false;
  EXPECT_DOUBLE_EQ(WlkSimilarity(a, b, o), 1.0);
}

TEST(ExactTransport, SingletonsAndPermutation) {
  EXPECT_DOUBLE_EQ(ExactTransport({{3.5}}).distance, 3.5);
  // Square matrix: the optimum is an assignment.
  const std::vector<std::vector<double>> c = {{4, 1, 3}, {2, 0, 5}, {3, 2, 2}};
  EXPECT_NEAR(ExactTransport(c).distance, (1 + 2 + 2) / 3.0, 1e-12);
  EXPECT_THROW(ExactTransport({}), std::invalid_argument);
  EXPECT_THROW(ExactTransport({{1, 2}, {3}}), std::invalid_argument);
}

TEST(ExactTransport, PlanHasUniformMarginals) {
  const std::vector<std::vector<double>> c = {{1, 2, 3, 4}, {2, 1, 0, 3}, {5, 1, 2, 2}};
  const auto r = ExactTransport(c);
  for (const auto& row : r.plan) {
    double s = 0;
    for (double x : row) s += x;
    EXPECT_NEAR(s, 1.0 / 3.0, 1e-12);
  }
  for (size_t j = 0; j < 4; ++j) {
    double s = 0;
    for (const auto& row : r.plan) s += row[j];
    EXPECT_NEAR(s, 0.25, 1e-12);
  }
}

TEST(ExactTransport, MatchesBasisEnumeration) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  for (int t = 0; t < 400; ++t) {
    const size_t n = 1 + rng() % 4, m = 1 + rng() % 4;
    std::vector<std::vector<double>> c(n, std::vector<double>(m));
    for (auto& row : c)
      for (auto& x : row) x = t % 5 == 0 ? std::floor(u(rng)) : u(rng);  // ties too
    EXPECT_NEAR(ExactTransport(c).distance, testing::TransportByBasisEnumeration(c), 1e-9);
  }
}

StaticEmbeddingTable Toy2d() {
  StaticEmbeddingTable t(2);
  t.Add("hit", {1.0, 0.0});
  t.Add("boy", {0.0, 1.0});
  t.Add("child", {0.2, 0.9});
  t.Add("baseball", {-1.0, 0.5});
  return t;
}

TEST(Wwlk, IdentityIsOne) {
  const AmrGraph g = ParsePenman(kBoyHits);
  const auto t = Toy2d();
  EXPECT_DOUBLE_EQ(WwlkDistance(g, g, t), 0.0);
  EXPECT_DOUBLE_EQ(WwlkSimilarity(g, g, t), 1.0);
}

TEST(Wwlk, SingleNodes) {
  const auto t = Toy2d();
  const AmrGraph a = ParsePenman("(x / boy)"), b = ParsePenman("(y / child)");
  const double d = std::hypot(0.2, 0.1);
  EXPECT_NEAR(WwlkDistance(a, b, t), d, 1e-12);
  EXPECT_NEAR(WwlkSimilarity(a, b, t), 1.0 / (1.0 + d), 1e-12);
}

TEST(Wwlk, BoyChildMatchesEnumerationOracle) {
  const auto t = Toy2d();
  const AmrGraph a = ParsePenman(kBoyHits), b = ParsePenman(kChildHits);
  const auto ha = WwlkNodeEmbeddings(a, t), hb = WwlkNodeEmbeddings(b, t);
  ASSERT_EQ(ha.size(), 3u);
  // Hand refinement for the hit node after one round: 0.5*hit + 0.5*mean(boy, baseball).
  WwlkOptions one;
  one.iterations = 1;
  const auto h1 = WwlkNodeEmbeddings(a, t, one);
  EXPECT_NEAR(h1[0][0], 0.5 * 1.0 + 0.5 * (0.0 - 1.0) / 2.0, 1e-15);
  EXPECT_NEAR(h1[0][1], 0.5 * 0.0 + 0.5 * (1.0 + 0.5) / 2.0, 1e-15);
  std::vector<std::vector<double>> cost(3, std::vector<double>(3));
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 3; ++j) cost[i][j] = EuclideanDistance(ha[i], hb[j]);
  EXPECT_NEAR(WwlkDistance(a, b, t), testing::TransportByBasisEnumeration(cost), 1e-9);
}

TEST(Wwlk, ConstantsGetDeterministicHashedVectors) {
  const auto t = Toy2d();
  const Vector v1 = HashedVector("-", 2, 1.5), v2 = HashedVector("-", 2, 1.5);
  EXPECT_EQ(v1, v2);
  EXPECT_NEAR(Norm(v1), 1.5, 1e-12);
  EXPECT_NE(HashedVector("+", 2, 1.5), v1);
  const AmrGraph g = ParsePenman("(r / boy :polarity -)");
  EXPECT_EQ(WwlkNodeEmbeddings(g, t).size(), 2u);
  EXPECT_THROW(WwlkNodeEmbeddings(g, StaticEmbeddingTable()), EmbeddingError);
}

TEST(Wwlk, SymmetricBitwise) {
  const auto t = Toy2d();
  std::mt19937_64 rng(4);
  const std::vector<std::string> pool = {"hit", "boy", "child", "baseball", "zzz"};
  for (int i = 0; i < 100; ++i) {
    const AmrGraph a = testing::RandomGraph(rng, 1 + static_cast<int>(rng() % 5), pool);
    const AmrGraph b = testing::RandomGraph(rng, 1 + static_cast<int>(rng() % 5), pool);
    EXPECT_EQ(WwlkDistance(a, b, t), WwlkDistance(b, a, t));
  }
}

}  // namespace
}  // namespace amrmeter
