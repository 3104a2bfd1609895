#include <gtest/gtest.h>

#include <random>

#include "idealflow/relations.hpp"
#include "idealflow/trajectory.hpp"
#include "test_support.hpp"

namespace idealflow {
namespace {

struct Fixture {
  DirectedGraph g;
  StructureMatrices s;
  UtilizationCounts c;

  explicit Fixture(DirectedGraph graph, const TrajectorySet& set)
      : g(std::move(graph)), s(structure_matrices(g)), c(count(utilization_sets(set, g))) {}

  std::vector<VerificationReport> identities() const {
    return verify_flow_identities({c.flow, c.od, c.indirect, c.alternative, s.adjacency, s.path_binary,
                            s.external_binary});
  }
};

Fixture g2_fixture() {
  auto g = testing::g2();
  TrajectorySet set(g, {{1, testing::nodes(g, {"a", "b", "c"})},
                        {2, testing::nodes(g, {"a", "c"})},
                        {3, testing::nodes(g, {"a", "b"})}});
  return Fixture(std::move(g), set);
}

TEST(Hadamard, ExternalMaskOnG2IsZero) {
  const auto f = g2_fixture();
  EXPECT_EQ(hadamard(f.s.external_binary, f.c.od), IntMatrix::square(3));
}

TEST(VerifyInequality, G2Holds) {
  const auto f = g2_fixture();
  const auto r = verify_inequality(f.c.flow, f.s.adjacency, f.c.od);
  EXPECT_TRUE(r.holds);
  EXPECT_TRUE(r.defects.empty());
}

TEST(VerifyInequality, ZeroMatrices) {
  EXPECT_TRUE(verify_inequality(IntMatrix::square(3), BinaryMatrix::square(3), IntMatrix::square(3)).holds);
}

TEST(VerifyInequality, TamperedFlowIsReported) {
  auto f = g2_fixture();
  f.c.flow(0, 2) = 3;
  const auto r = verify_inequality(f.c.flow, f.s.adjacency, f.c.od);
  EXPECT_FALSE(r.holds);
  ASSERT_EQ(r.defects.size(), 1u);
  EXPECT_EQ(r.defects[0].row, 0u);
  EXPECT_EQ(r.defects[0].col, 2u);
  EXPECT_EQ(r.defects[0].lhs, 3.0);
  EXPECT_EQ(r.defects[0].rhs, 2.0);
}

TEST(VerifyInequality, DimensionMismatch) {
  EXPECT_THROW(verify_inequality(IntMatrix::square(2), BinaryMatrix::square(3), IntMatrix::square(3)), Error);
}

TEST(VerifyFlowIdentities, G2AllHold) {
  const auto f = g2_fixture();
  const auto reports = f.identities();
  ASSERT_EQ(reports.size(), 4u);
  for (const auto& r : reports) EXPECT_TRUE(r.holds) << r.identity;
  // F = A o D - T at (a,c): 1 = 2 - 1.
  EXPECT_EQ(f.c.flow(0, 2), 1);
  EXPECT_EQ(hadamard(f.s.adjacency, f.c.od)(0, 2), 2);
  EXPECT_EQ(f.c.alternative(0, 2), 1);
}

TEST(VerifyFlowIdentities, PathGraphSubstituteFlow) {
  auto g = testing::path_abc();
  TrajectorySet set(g, {{1, testing::nodes(g, {"a", "b", "c"})}});
  const Fixture f(std::move(g), set);
  EXPECT_EQ(f.c.indirect(0, 2), 1);
  EXPECT_EQ(f.c.alternative(0, 2), 0);
  EXPECT_EQ(hadamard(f.s.external_binary, f.c.od)(0, 2), 1);
  for (const auto& r : f.identities()) EXPECT_TRUE(r.holds) << r.identity;
}

TEST(VerifyFlowIdentities, EmptyCorpus) {
  const Fixture f(testing::g1(), TrajectorySet{});
  for (const auto& r : f.identities()) EXPECT_TRUE(r.holds) << r.identity;
}

TEST(VerifyFlowIdentities, DetectsCorruptedAlternativeFlow) {
  auto f = g2_fixture();
  f.c.alternative(0, 2) = 0;
  const auto reports = f.identities();
  EXPECT_FALSE(reports[0].holds);  // L = T + Ehat o D
  EXPECT_TRUE(reports[1].holds);
  EXPECT_TRUE(reports[2].holds);
  EXPECT_FALSE(reports[3].holds);  // F = A o D - T
}

TEST(VerifyFlowIdentities, FirstThreeIdentitiesHoldOnRandomWalks) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 7;
    auto g = testing::random_digraph(rng, n, 0.2 + 0.1 * (trial % 5));
    const auto set = testing::random_walk_corpus(rng, g, 1 + trial % 50, 20);
    const Fixture f(std::move(g), set);
    const auto reports = f.identities();
    for (std::size_t k = 0; k < 3; ++k) ASSERT_TRUE(reports[k].holds) << reports[k].identity << " trial " << trial;
    EXPECT_TRUE(verify_inequality(f.c.flow, f.s.adjacency, f.c.od).holds);
    // D = Phat o D  <=>  D > 0 only where a path exists.
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t t = 0; t < n; ++t)
        if (f.c.od(s, t) > 0) EXPECT_TRUE(f.s.path(s, t).finite() && s != t);
  }
}

TEST(VerifyFlowIdentities, AllFourHoldOnSimplePathCorpora) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 7;
    auto g = testing::random_digraph(rng, n, 0.2 + 0.1 * (trial % 5));
    const auto set = testing::simple_path_corpus(rng, g, 1 + trial % 50, 20);
    const Fixture f(std::move(g), set);
    for (const auto& r : f.identities()) ASSERT_TRUE(r.holds) << r.identity << " trial " << trial;
    EXPECT_TRUE(verify_inequality(f.c.flow, f.s.adjacency, f.c.od).holds);
  }
}

// A walk that crosses s->t directly and later reaches t from s again through
// another node is in both F~[s][t] and T~[s][t], so F = A o D - T undercounts
// by one. At the set level A o D~ = F~ u T~, which gives
// A o D = F + T - |F~ n T~| for any corpus.
TEST(VerifyFlowIdentities, FourthIdentityFailsWhenWalksRevisit) {
  auto g = DirectedGraph::from_edges({{"s", "t"}, {"t", "x"}, {"x", "s"}});
  TrajectorySet set(g, {{1, testing::nodes(g, {"s", "t", "x", "s", "t"})}});
  const Fixture f(std::move(g), set);
  const auto reports = f.identities();
  EXPECT_TRUE(reports[0].holds);
  EXPECT_TRUE(reports[1].holds);
  EXPECT_TRUE(reports[2].holds);
  ASSERT_FALSE(reports[3].holds);
  EXPECT_EQ(reports[3].defects[0].row, 0u);  // (s, t)
  EXPECT_EQ(reports[3].defects[0].col, 1u);
  EXPECT_EQ(reports[3].defects[0].lhs, 1.0);
  EXPECT_EQ(reports[3].defects[0].rhs, 0.0);
}

TEST(VerifyFlowIdentities, OverlapAccountsForEveryFourthIdentityDefect) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 7;
    const auto g = testing::random_digraph(rng, n, 0.3);
    const auto set = testing::random_walk_corpus(rng, g, 1 + trial % 50, 20);
    const auto u = utilization_sets(set, g);
    const auto c = count(u);
    const auto direct_od = hadamard(adjacency_matrix(g), c.od);
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t t = 0; t < n; ++t) {
        std::int64_t both = 0;
        for (auto id : u.flow(s, t)) both += static_cast<std::int64_t>(u.alternative(s, t).count(id));
        EXPECT_EQ(direct_od(s, t), c.flow(s, t) + c.alternative(s, t) - both);
      }
  }
}

TEST(VerifyPremagic, IdealFlowOfG1) {
  EXPECT_TRUE(verify_premagic(IntMatrix::from_rows({{0, 2, 0}, {1, 0, 1}, {1, 0, 0}})).holds);
}

TEST(VerifyPremagic, ZeroMatrix) {
  EXPECT_TRUE(verify_premagic(RealMatrix::square(4), 0.0).holds);
}

TEST(VerifyPremagic, AsymmetricCounterexample) {
  const auto r = verify_premagic(IntMatrix::from_rows({{0, 1}, {0, 0}}));
  EXPECT_FALSE(r.holds);
  ASSERT_EQ(r.defects.size(), 2u);
  EXPECT_EQ(r.defects[0].row, 0u);
  EXPECT_EQ(r.defects[0].lhs, 1.0);
  EXPECT_EQ(r.defects[0].rhs, 0.0);
  EXPECT_EQ(r.defects[1].row, 1u);
  EXPECT_EQ(r.defects[1].lhs, 0.0);
  EXPECT_EQ(r.defects[1].rhs, 1.0);
}

TEST(VerifyPremagic, NotSquare) {
  try {
    verify_premagic(RealMatrix(2, 3), 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNotSquare);
  }
}

TEST(VerifyPremagic, ToleranceBoundary) {
  const auto m = RealMatrix::from_rows({{0.0, 1.0 + 1e-10}, {1.0, 0.0}});
  EXPECT_TRUE(verify_premagic(m, 1e-9).holds);
  EXPECT_FALSE(verify_premagic(m, 1e-11).holds);
}

// Random premagic matrices as sums of weighted directed cycles.
IntMatrix random_premagic(std::mt19937_64& rng, std::size_t n) {
  auto m = IntMatrix::square(n);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (int k = 0; k < 4; ++k) {
    std::shuffle(order.begin(), order.end(), rng);
    const std::size_t len = 2 + rng() % (n - 1);
    const std::int64_t w = 1 + static_cast<std::int64_t>(rng() % 9);
    for (std::size_t i = 0; i < len; ++i) m(order[i], order[(i + 1) % len]) += w;
  }
  return m;
}

TEST(VerifyPremagic, ClosedUnderAdditionAndScaling) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 8;
    const auto x = random_premagic(rng, n);
    const auto y = random_premagic(rng, n);
    ASSERT_TRUE(verify_premagic(x).holds);
    EXPECT_TRUE(verify_premagic(x + y).holds);
    const auto k = static_cast<std::int64_t>(rng() % 7);
    EXPECT_TRUE(verify_premagic(hadamard(x, IntMatrix(n, n, k))).holds);
  }
}

TEST(VerificationReport, DefectListIsCapped) {
  auto m = IntMatrix::square(150);
  for (std::size_t i = 0; i < 150; ++i) m(i, (i + 1) % 150) = static_cast<std::int64_t>(i);
  const auto r = verify_premagic(m);
  EXPECT_FALSE(r.holds);
  EXPECT_EQ(r.defects.size(), VerificationReport::kMaxDefects);
  EXPECT_EQ(r.defect_count, 150u);
}

}  // namespace
}  // namespace idealflow
