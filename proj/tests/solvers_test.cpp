#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "tdiso/error.hpp"
#include "tdiso/families.hpp"
#include "tdiso/solvers.hpp"

using namespace tdiso;

namespace {

std::vector<Edge> triangles() { return {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}}; }

}  // namespace

TEST(BruteIso, MatchesPermutationOracle) {
  std::size_t accepted = 0;
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const std::size_t n = 5 + seed % 3;
    auto g = random_graph(n, n + seed % 4, seed);
    auto h = seed % 2 ? relabel(g, random_permutation(n, seed)) : random_graph(n, g.size(), seed + 1000);
    auto r = brute_force_iso(g, h);
    ASSERT_EQ(r.verdict == Verdict::Accept, oracle::isomorphic(g, h)) << "seed " << seed;
    if (r.verdict == Verdict::Accept) {
      ++accepted;
      ASSERT_TRUE(r.witness);
      EXPECT_EQ(relabel(g, *r.witness), h);
    }
  }
  EXPECT_GE(accepted, 30u);
}

TEST(BruteIso, RespectsCap) {
  try {
    brute_force_iso(cycle(12), cycle(12), 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooLarge);
  }
}

TEST(BruteIso, ColoredMatchesOracle) {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 40; ++round) {
    auto g = random_graph(6, 6 + rng() % 3, rng());
    ColoredGraph a{g, EquivalencePartition(6, {{0, 1}, {2, 3}, {4}, {5}}), {}};
    a.coloring.set({0, 1}, 1);
    if (rng() % 2) a.coloring.set({3, 2}, 2);
    auto b = round % 2 ? relabel(a, random_permutation(6, rng())) : a;
    if (round % 4 == 0) {
      b.coloring = {};
      b.coloring.set({1, 0}, 1);
    }
    EXPECT_EQ(brute_force_iso_colored(a, b).verdict == Verdict::Accept, oracle::isomorphic(a, b)) << round;
  }
}

TEST(Subsets, ConnectedSubsetsMatchEnumeration) {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    auto g = random_graph(8, 9, seed);
    for (std::size_t k = 1; k <= 4; ++k) {
      std::vector<VertexSet> want;
      for (const auto& s : oracle::subsets_of(8, k))
        if (oracle::set_connected(g, s)) want.push_back(s);
      auto got = connected_subsets(g, k);
      std::sort(got.begin(), got.end());
      std::sort(want.begin(), want.end());
      EXPECT_EQ(got, want) << "seed " << seed << " k " << k;
    }
  }
  EXPECT_THROW(connected_subsets(complete(9), 5, 100), Error);
}

TEST(Subsets, QuotientCaptureOnIdentityClosureIsConnectedSubsets) {
  auto g = path(6);
  auto family = capture_bags_connected_quotient(g, 2);
  auto want = connected_subsets(g, 2);
  EXPECT_EQ(family, BagFamily(want));
}

TEST(Cycles, ChordalityAndGeodesicMatchOracle) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const std::size_t n = 6 + seed % 4;
    auto g = random_graph(n, n + seed % 5, seed);
    EXPECT_EQ(chordality(g), oracle::longest_induced_cycle(g)) << "seed " << seed;
    EXPECT_EQ(geodesic_cycle_length(g), oracle::longest_geodesic_cycle(g)) << "seed " << seed;
  }
  EXPECT_EQ(chordality(complete(4)), 3u);
  EXPECT_EQ(geodesic_cycle_length(cycle(6)), 6u);
  EXPECT_EQ(geodesic_cycle_length(path(6)), 0u);
}

TEST(Cycles, GeodesicCanBeShorterThanInduced) {
  // C6 plus a path of length 2 between opposite vertices: the hexagon stays
  // induced but is no longer geodesic.
  std::vector<Edge> es{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}, {0, 6}, {6, 3}};
  auto g = Graph::from_edges(7, es);
  EXPECT_EQ(chordality(g), oracle::longest_induced_cycle(g));
  EXPECT_EQ(geodesic_cycle_length(g), oracle::longest_geodesic_cycle(g));
  EXPECT_LT(geodesic_cycle_length(g), chordality(g));
}

TEST(Solvers, SeparateCycleFromTwoTriangles) {
  auto es = triangles();
  auto two = Graph::from_edges(6, es);
  EXPECT_EQ(cstw_iso(cycle(6), two, 2), Verdict::Reject);
  EXPECT_EQ(geodesic_stw_iso(cycle(6), two, 2), Verdict::Reject);
  EXPECT_EQ(geodesic_stw_iso(cycle(6), relabel(cycle(6), random_permutation(6, 4)), 2), Verdict::Accept);
}

TEST(Solvers, CstwAndGeodesicAgreeWithOracle) {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    auto g = random_graph(6, 6 + seed % 2, seed * 3);
    auto h = seed % 2 ? relabel(g, random_permutation(6, seed)) : random_graph(6, g.size(), seed * 3 + 7);
    const bool want = oracle::isomorphic(g, h);
    const auto k = oracle::strong_width(g, false);
    for (auto v : {cstw_iso(g, h, k), geodesic_stw_iso(g, h, k)})
      if (v != Verdict::Infeasible) EXPECT_EQ(v == Verdict::Accept, want) << "seed " << seed;
  }
}

TEST(Solvers, CstwInfeasibleOnLargeClasses) {
  EXPECT_EQ(cstw_iso(complete(5), complete(5), 1), Verdict::Infeasible);
}

TEST(Supplied, WidthMismatchThrows) {
  BagFamily a({{0}, {1}, {2}}), b({{0, 1}, {2}});
  try {
    iso_with_supplied_bags(path(3), a, path(3), b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::WidthMismatch);
  }
}

TEST(Supplied, EmptyFamiliesAndConditionalFlag) {
  auto r = iso_with_supplied_bags(path(3), BagFamily{}, path(3), BagFamily{});
  EXPECT_EQ(r.verdict, Verdict::Reject);
  EXPECT_TRUE(r.conditional);
  SuppliedOptions vouched;
  vouched.vouch = true;
  EXPECT_FALSE(iso_with_supplied_bags(path(3), BagFamily{}, path(3), BagFamily{}, vouched).conditional);
}

TEST(Supplied, SemiSmoothFamiliesDecideForests) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto g = random_graph(7, 6, seed);
    if (g.size() + connected_components(g).size() != g.order()) continue;
    auto h = seed % 2 ? relabel(g, random_permutation(7, seed)) : random_graph(7, 6, seed + 50);
    SuppliedOptions opt;
    opt.capture = CaptureKind::SemiSmooth;
    BagFamily f1(oracle::subsets_of(7, 2)), f2(oracle::subsets_of(7, 2));
    auto r = iso_with_supplied_bags(g, f1, h, f2, opt);
    EXPECT_EQ(r.verdict == Verdict::Accept, oracle::isomorphic(g, h)) << "seed " << seed;
  }
}
