#include <gtest/gtest.h>

#include <random>

#include "bireg/error.hpp"
#include "bireg/matching.hpp"
#include "bireg/sampler.hpp"
#include "support.hpp"

using namespace bireg;
using namespace testing_support;

namespace {

BipartiteAdjacency five_edge() {
  return BipartiteAdjacency(3, 3, {{0}, {0}, {0, 1, 2}});
}

BipartiteAdjacency complete(std::size_t left, std::size_t right) {
  std::vector<VertexList> out(left);
  for (auto& list : out) {
    for (Vertex b = 0; b < right; ++b) list.push_back(b);
  }
  return BipartiteAdjacency(left, right, std::move(out));
}

}  // namespace

TEST(MaxMatching, Examples) {
  EXPECT_EQ(max_matching(complete(2, 2)).size(), 2u);
  EXPECT_EQ(max_matching(BipartiteAdjacency(2, 2, {{0}, {0}})).size(), 1u);
  const auto m = max_matching(five_edge());
  EXPECT_EQ(m.size(), 2u);
  EXPECT_TRUE(verify_matching(five_edge(), m));
}

TEST(MaxMatching, EmptyGraph) {
  EXPECT_EQ(max_matching(BipartiteAdjacency(0, 0, {})).size(), 0u);
  EXPECT_TRUE(has_perfect_matching(BipartiteAdjacency(0, 0, {})));
}

TEST(MaxMatching, AgreesWithInjectionScan) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 600; ++trial) {
    const std::size_t left = 1 + rng() % 7;
    const std::size_t right = 1 + rng() % 7;
    const double p = 0.1 + 0.8 * static_cast<double>(rng() % 100) / 100.0;
    const auto h = random_bipartite(left, right, p, rng);
    const auto m = max_matching(h);
    ASSERT_TRUE(verify_matching(h, m));
    ASSERT_EQ(m.size(), brute_max_matching(h)) << "trial " << trial;
  }
}

TEST(PerfectMatching, Examples) {
  EXPECT_FALSE(has_perfect_matching(BipartiteAdjacency(2, 2, {{}, {0, 1}})));
  EXPECT_FALSE(has_perfect_matching(five_edge()));
  EXPECT_TRUE(has_perfect_matching(complete(3, 3)));
}

TEST(PerfectMatching, EveryUnitRatioMemberMatches) {
  for (std::int64_t d : {1, 2, 5, 13}) {
    const auto params = validate_params(1, 1, 40, d);
    for (std::uint64_t s = 0; s < 5; ++s) {
      EXPECT_TRUE(has_perfect_matching(sample(params, SwitchChain{}, Seed{s}).adjacency()));
    }
  }
  for (const auto& g : enumerate_family(validate_params(1, 1, 4, 2))) {
    EXPECT_TRUE(has_perfect_matching(g.adjacency()));
  }
}

TEST(PerfectMatching, UnequalSides) {
  try {
    has_perfect_matching(complete(2, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnequalSides);
  }
  EXPECT_THROW(find_problematic_pair(complete(3, 2)), Error);
}

TEST(ProblematicPair, Examples) {
  const auto isolated = BipartiteAdjacency(3, 3, {{0, 1}, {}, {1, 2}});
  const auto pair = find_problematic_pair(isolated);
  ASSERT_TRUE(pair);
  EXPECT_EQ(pair->s, (VertexList{1}));
  EXPECT_EQ(pair->t, (VertexList{0, 1, 2}));

  EXPECT_FALSE(find_problematic_pair(complete(3, 3)));

  const auto five = find_problematic_pair(five_edge());
  ASSERT_TRUE(five);
  EXPECT_EQ(five->s, (VertexList{0, 1}));
  EXPECT_EQ(five->t, (VertexList{1, 2}));
  EXPECT_TRUE(verify_problematic_pair(five_edge(), *five));
}

TEST(ProblematicPair, VerifierRejectsBrokenWitnesses) {
  const auto h = five_edge();
  EXPECT_FALSE(verify_problematic_pair(h, {{0, 1}, {0, 2}}));   // edge into T
  EXPECT_FALSE(verify_problematic_pair(h, {{0}, {1, 2}}));      // sizes sum to |A|
  EXPECT_FALSE(verify_problematic_pair(h, {{}, {0, 1, 2, 2}})); // empty S
}

TEST(ProblematicPair, DualityWithExhaustiveScan) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 800; ++trial) {
    const std::size_t size = 1 + rng() % 8;
    const double p = 0.05 + 0.6 * static_cast<double>(rng() % 100) / 100.0;
    const auto h = random_bipartite(size, size, p, rng);
    const auto pair = find_problematic_pair(h);
    const bool perfect = has_perfect_matching(h);
    ASSERT_EQ(pair.has_value(), brute_problematic_exists(h)) << "trial " << trial;
    ASSERT_EQ(perfect, !pair.has_value());
    if (pair) ASSERT_TRUE(verify_problematic_pair(h, *pair));
  }
}

TEST(ProblematicPair, Deterministic) {
  std::mt19937_64 rng(5);
  const auto h = random_bipartite(8, 8, 0.2, rng);
  EXPECT_EQ(find_problematic_pair(h), find_problematic_pair(h));
}
