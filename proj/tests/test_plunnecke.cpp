#include <gtest/gtest.h>

#include <random>

#include "bireg/error.hpp"
#include "bireg/matching.hpp"
#include "bireg/plunnecke.hpp"
#include "support.hpp"

using namespace bireg;
using namespace testing_support;

namespace {

LayeredGraph stack(std::vector<BipartiteAdjacency> layers) {
  return LayeredGraph(std::move(layers));
}

// u -> v, v -> w1, v -> w2
LayeredGraph fan_out() {
  return stack({BipartiteAdjacency(1, 1, {{0}}), BipartiteAdjacency(1, 2, {{0, 1}})});
}

LayeredGraph random_layered_graph(std::mt19937_64& rng, std::size_t max_size, unsigned h,
                                  double p) {
  std::vector<BipartiteAdjacency> layers;
  std::size_t left = 1 + rng() % max_size;
  for (unsigned i = 0; i < h; ++i) {
    const std::size_t right = 1 + rng() % max_size;
    layers.push_back(random_bipartite(left, right, p, rng));
    left = right;
  }
  return LayeredGraph(std::move(layers));
}

// Saturation of Gamma(v) from Gamma(u) by brute force on the induced layer.
bool brute_upward(const LayeredGraph& g, unsigned layer, Vertex u, Vertex v) {
  const auto& lower = g.layer(layer);
  const auto& upper = g.layer(layer + 1);
  const VertexList a(lower.out(u).begin(), lower.out(u).end());
  const VertexList b(upper.out(v).begin(), upper.out(v).end());
  const auto h = induce(upper, a, b);
  return brute_max_matching(h.local) == b.size();
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(BuildLayered, LevelSizesAndBiregularity) {
  const auto g = build_random_layered(Rational(2), 4, 2, 2, Seed{1}, PairingRejection{});
  EXPECT_EQ(g.level_sizes(), (std::vector<std::size_t>{4, 8, 16}));
  const auto unit = build_random_layered(Rational(1), 5, 2, 2, Seed{1}, SwitchChain{});
  for (unsigned i = 1; i <= 2; ++i) {
    const auto params = unit.layer_params(i);
    ASSERT_TRUE(params);
    EXPECT_TRUE(is_biregular(unit.layer(i), *params));
    EXPECT_EQ(params->d(), 2);
  }
  EXPECT_EQ(unit, build_random_layered(Rational(1), 5, 2, 2, Seed{1}, SwitchChain{}));
  EXPECT_NE(unit, build_random_layered(Rational(1), 5, 2, 2, Seed{2}, SwitchChain{}));
  const auto rational = build_random_layered(Rational(3, 2), 4, 2, 2, Seed{3}, SwitchChain{});
  EXPECT_EQ(rational.level_sizes(), (std::vector<std::size_t>{4, 6, 9}));
}

TEST(BuildLayered, Errors) {
  EXPECT_EQ(code_of([] { validate_layered_params(Rational(3, 2), 4, 2, 3); }),
            ErrorCode::NonIntegralLayer);
  EXPECT_EQ(code_of([] { validate_layered_params(Rational(1), 5, 1, 2); }),
            ErrorCode::InvalidDegree);
  EXPECT_EQ(code_of([] { validate_layered_params(Rational(2), 4, 3, 2); }),
            ErrorCode::InvalidDegree);
  EXPECT_EQ(code_of([] { validate_layered_params(Rational(1), 5, 6, 2); }),
            ErrorCode::InvalidDegree);
}

TEST(EdgeCondition, StackedIdentityHolds) {
  const BipartiteAdjacency id(4, 4, {{0}, {1}, {2}, {3}});
  const auto g = stack({id, id, id});
  for (unsigned layer = 1; layer <= 3; ++layer) {
    for (Vertex u = 0; u < 4; ++u) {
      if (layer < 3) EXPECT_TRUE(check_edge_condition(g, layer, u, u, Condition::Upward));
      if (layer > 1) EXPECT_TRUE(check_edge_condition(g, layer, u, u, Condition::Downward));
    }
  }
  EXPECT_TRUE(check_commutative(g).commutative);
}

TEST(EdgeCondition, FanOutFailsUpward) {
  const auto g = fan_out();
  EXPECT_FALSE(check_edge_condition(g, 1, 0, 0, Condition::Upward));
  EXPECT_TRUE(check_edge_condition(g, 2, 0, 1, Condition::Downward));
  const auto report = check_commutative(g);
  EXPECT_FALSE(report.commutative);
  EXPECT_EQ(report.upward_violations, (std::vector<LayerEdge>{{1, 0, 0}}));
  EXPECT_TRUE(report.downward_violations.empty());
  EXPECT_EQ(report.edges_checked, 3u);
}

TEST(EdgeCondition, Errors) {
  const auto g = fan_out();
  EXPECT_EQ(code_of([&] { check_edge_condition(g, 0, 0, 0, Condition::Upward); }),
            ErrorCode::LayerOutOfRange);
  EXPECT_EQ(code_of([&] { check_edge_condition(g, 3, 0, 0, Condition::Upward); }),
            ErrorCode::LayerOutOfRange);
  EXPECT_EQ(code_of([&] { check_edge_condition(g, 2, 0, 0, Condition::Upward); }),
            ErrorCode::LayerOutOfRange);
  EXPECT_EQ(code_of([&] { check_edge_condition(g, 1, 0, 0, Condition::Downward); }),
            ErrorCode::LayerOutOfRange);
  const auto two = stack({BipartiteAdjacency(2, 2, {{0}, {1}}), BipartiteAdjacency(2, 2, {{0}, {1}})});
  EXPECT_EQ(code_of([&] { check_edge_condition(two, 1, 0, 1, Condition::Upward); }),
            ErrorCode::EdgeAbsent);
}

TEST(EdgeCondition, AgreesWithBruteForceOnBiregularInstances) {
  for (std::uint64_t s = 0; s < 6; ++s) {
    const auto g = build_random_layered(Rational(1), 9, 3 + s % 3, 3, Seed{s}, PairingRejection{});
    for (unsigned layer = 1; layer < 3; ++layer) {
      for (Vertex u = 0; u < g.level_size(layer - 1); ++u) {
        for (Vertex v : g.layer(layer).out(u)) {
          ASSERT_EQ(check_edge_condition(g, layer, u, v, Condition::Upward),
                    brute_upward(g, layer, u, v));
        }
      }
    }
  }
}

TEST(EdgeCondition, AgreesWithBruteForceOnIrregularInstances) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 150; ++trial) {
    const auto g = random_layered_graph(rng, 7, 3, 0.4);
    for (unsigned layer = 1; layer < 3; ++layer) {
      for (Vertex u = 0; u < g.level_size(layer - 1); ++u) {
        for (Vertex v : g.layer(layer).out(u)) {
          ASSERT_EQ(check_edge_condition(g, layer, u, v, Condition::Upward),
                    brute_upward(g, layer, u, v));
        }
      }
    }
  }
}

TEST(EdgeCondition, DownwardIsUpwardOnReversal) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const unsigned h = 2 + static_cast<unsigned>(rng() % 3);
    const auto g = random_layered_graph(rng, 6, h, 0.45);
    const auto rev = g.reversed();
    for (unsigned layer = 2; layer <= h; ++layer) {
      for (Vertex u = 0; u < g.level_size(layer - 1); ++u) {
        for (Vertex v : g.layer(layer).out(u)) {
          ASSERT_EQ(check_edge_condition(g, layer, u, v, Condition::Downward),
                    check_edge_condition(rev, h - layer + 1, v, u, Condition::Upward));
        }
      }
    }
  }
}

TEST(Commutative, SingleLayerIsVacuous) {
  const auto g = stack({BipartiteAdjacency(2, 3, {{0, 1}, {2}})});
  const auto report = check_commutative(g);
  EXPECT_TRUE(report.commutative);
  EXPECT_EQ(report.edges_checked, 0u);
}

TEST(Commutative, ReportInvariants) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = random_layered_graph(rng, 6, 3, 0.5);
    const auto full = check_commutative(g);
    EXPECT_EQ(full.commutative,
              full.upward_violations.empty() && full.downward_violations.empty());
    const std::size_t expected =
        g.layer(1).edge_count() + 2 * g.layer(2).edge_count() + g.layer(3).edge_count();
    EXPECT_EQ(full.edges_checked, expected);
    CommutativityOptions early;
    early.stop_at_first_violation = true;
    EXPECT_EQ(check_commutative(g, early).commutative, full.commutative);
  }
}

TEST(Commutative, SampledEdgesAreLabelled) {
  const auto g = build_random_layered(Rational(1), 30, 10, 3, Seed{4}, SwitchChain{});
  CommutativityOptions options;
  options.sample_edges = 5;
  options.seed = Seed{9};
  const auto report = check_commutative(g, options);
  EXPECT_TRUE(report.sampled);
  EXPECT_EQ(report.edges_checked, 10u);
  EXPECT_FALSE(check_commutative(g).sampled);
}

TEST(Commutative, DenseBiregularInstanceCommutes) {
  const auto g = build_random_layered(Rational(1), 40, 30, 3, Seed{5}, SwitchChain{});
  EXPECT_TRUE(check_commutative(g).commutative);
}

TEST(Magnification, Examples) {
  const auto merge = stack({BipartiteAdjacency(2, 1, {{0}, {0}})});
  for (const auto& r : {magnification_bruteforce(merge, 1), magnification_flow(merge, 1)}) {
    EXPECT_EQ(r.value, Rational(1, 2));
    EXPECT_EQ(r.witness, (VertexList{0, 1}));
  }
  const auto id = stack({BipartiteAdjacency(3, 3, {{0}, {1}, {2}})});
  EXPECT_EQ(magnification_bruteforce(id, 1).value, Rational(1));
  EXPECT_EQ(magnification_flow(id, 1).value, Rational(1));
  const auto full = stack({BipartiteAdjacency(2, 4, {{0, 1, 2, 3}, {0, 1, 2, 3}})});
  for (const auto& r : {magnification_bruteforce(full, 1), magnification_flow(full, 1)}) {
    EXPECT_EQ(r.value, Rational(2));
    EXPECT_EQ(r.witness, (VertexList{0, 1}));
  }
  const auto single = stack({BipartiteAdjacency(1, 3, {{0, 2}}), BipartiteAdjacency(3, 2, {{0}, {}, {0, 1}})});
  EXPECT_EQ(magnification_flow(single, 1).value, Rational(2));
  EXPECT_EQ(magnification_flow(single, 2).value, Rational(2));
}

TEST(Magnification, BruteForceTooLarge) {
  std::vector<VertexList> out(21, VertexList{0});
  const auto g = stack({BipartiteAdjacency(21, 1, out)});
  EXPECT_EQ(code_of([&] { magnification_bruteforce(g, 1); }), ErrorCode::TooLarge);
  EXPECT_EQ(magnification_flow(g, 1).value, Rational(1, 21));
}

TEST(Magnification, FlowMatchesBruteForce) {
  std::mt19937_64 rng(123);
  int compared = 0;
  for (int trial = 0; trial < 220; ++trial) {
    const unsigned h = 1 + static_cast<unsigned>(rng() % 3);
    const double p = 0.1 + 0.5 * static_cast<double>(rng() % 100) / 100.0;
    const auto g = random_layered_graph(rng, 10, h, p);
    for (unsigned i = 1; i <= h; ++i) {
      const auto flow = magnification_flow(g, i);
      const auto brute = magnification_bruteforce(g, i);
      const Rational oracle = brute_magnification(g, i);
      ASSERT_EQ(flow.value, oracle) << "trial " << trial << " i " << i;
      ASSERT_EQ(brute.value, oracle);
      ASSERT_FALSE(flow.witness.empty());
      ASSERT_EQ(Rational(static_cast<std::int64_t>(reach_size(g, flow.witness, i)),
                         static_cast<std::int64_t>(flow.witness.size())),
                flow.value);
      ASSERT_EQ(Rational(static_cast<std::int64_t>(reach_size(g, brute.witness, i)),
                         static_cast<std::int64_t>(brute.witness.size())),
                brute.value);
      ++compared;
    }
  }
  EXPECT_GE(compared, 200);
}

TEST(Magnification, BiregularLayersGivePowersOfRatio) {
  struct Case {
    Rational k;
    std::int64_t m;
    std::int64_t d;
    unsigned h;
  };
  for (const auto& c : {Case{Rational(1), 12, 3, 3}, Case{Rational(2), 4, 2, 3},
                        Case{Rational(3, 2), 4, 2, 2}, Case{Rational(3), 6, 2, 2}}) {
    const auto g = build_random_layered(c.k, c.m, c.d, c.h, Seed{7}, SwitchChain{});
    std::vector<Rational> values;
    for (unsigned i = 1; i <= c.h; ++i) {
      Rational expected(1);
      for (unsigned j = 0; j < i; ++j) expected *= c.k;
      const auto r = magnification_flow(g, i);
      EXPECT_EQ(r.value, expected);
      values.push_back(r.value);
    }
    EXPECT_TRUE(plunnecke_monotone_check(values));
  }
}

TEST(Monotone, Examples) {
  EXPECT_TRUE(plunnecke_monotone_check(std::vector<Rational>{Rational(4), Rational(2)}));
  EXPECT_FALSE(plunnecke_monotone_check(std::vector<Rational>{Rational(2), Rational(5)}));
  EXPECT_TRUE(plunnecke_monotone_check(std::vector<Rational>{Rational(3, 2), Rational(9, 4)}));
  EXPECT_TRUE(plunnecke_monotone_check(std::vector<Rational>{Rational(7)}));
  EXPECT_EQ(code_of([] {
              plunnecke_monotone_check(std::vector<Rational>{Rational(1), Rational(0)});
            }),
            ErrorCode::NonPositiveValue);
}

TEST(Monotone, HoldsOnCommutativeInstances) {
  std::mt19937_64 rng(77);
  int commutative = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const unsigned h = 2 + static_cast<unsigned>(rng() % 2);
    const auto g = random_layered_graph(rng, 6, h, 0.6);
    if (!check_commutative(g).commutative) continue;
    std::vector<Rational> values;
    for (unsigned i = 1; i <= h; ++i) values.push_back(magnification_flow(g, i).value);
    if (values.front() == 0) continue;
    bool positive = true;
    for (const auto& v : values) positive = positive && v > 0;
    if (!positive) continue;
    ++commutative;
    EXPECT_TRUE(plunnecke_monotone_check(values)) << "trial " << trial;
  }
  EXPECT_GT(commutative, 10);
}
