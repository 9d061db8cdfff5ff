#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "tdiso/error.hpp"
#include "tdiso/families.hpp"
#include "tdiso/wl.hpp"

using namespace tdiso;

namespace {

BagFamily all_subsets(std::size_t n, std::size_t k) { return BagFamily(oracle::subsets_of(n, k)); }

std::vector<Vertex> apply(const std::vector<Vertex>& perm, std::vector<Vertex> t) {
  for (auto& v : t) v = perm[v];
  return t;
}

}  // namespace

TEST(Universe, SubstitutionStaysInsideTheFamily) {
  auto family = BagFamily({{0, 1}, {1, 2}, {3}});
  TupleUniverse u(4, family, 3);
  EXPECT_EQ(static_cast<double>(u.size()), TupleUniverse::count(4, family, 3));
  for (std::uint32_t t = 0; t < u.size(); ++t) {
    auto tuple = u.tuple(t);
    EXPECT_EQ(u.find(tuple), t);
    VertexSet head(tuple.begin(), tuple.begin() + static_cast<std::ptrdiff_t>(u.lead()));
    EXPECT_TRUE(family.contains(make_vertex_set(head)));
    for (std::size_t j = 0; j < 3; ++j)
      for (Vertex x = 0; x < 4; ++x) {
        auto moved = tuple;
        moved[j] = x;
        auto idx = u.substitute(t, j, x);
        EXPECT_EQ(idx, u.find(moved));
        if (idx != TupleUniverse::kNone) EXPECT_EQ(u.tuple(idx), moved);
      }
  }
}

TEST(Universe, CapIsEnforced) {
  try {
    TupleUniverse u(10, all_subsets(10, 2), 6, 1000);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TupleCapExceeded);
  }
}

TEST(Refinement, SplitterMatchesNaive) {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 40; ++round) {
    const std::size_t n = 3 + rng() % 4;
    auto g = random_graph(n, rng() % (n * (n - 1) / 2 + 1), rng());
    auto family = all_subsets(n, 1 + rng() % 2);
    TupleUniverse u(n, family, family.width() + 1 + rng() % 2);
    ColorTable table;
    auto init = initial_coloring(g, u, table);
    auto fast = stable_refinement(u, init, table);
    auto slow = naive_stable(u, init, table);
    ASSERT_EQ(partition_of(fast), partition_of(slow)) << "round " << round;
    EXPECT_EQ(partition_of(refine_round(u, slow, table)), partition_of(slow));
  }
}

TEST(Refinement, StableColorsAreAutomorphismInvariant) {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    auto g = random_graph(5, 4 + seed % 3, seed);
    auto family = all_subsets(5, 2);
    TupleUniverse u(5, family, 3);
    ColorTable table;
    auto stable = stable_refinement(u, initial_coloring(g, u, table), table);
    for (const auto& sigma : oracle::automorphisms(g))
      for (std::uint32_t t = 0; t < u.size(); ++t)
        ASSERT_EQ(stable[t], stable[u.find(apply(sigma, u.tuple(t)))]) << "seed " << seed;
  }
}

TEST(Refinement, PathEndpointsShareColorsAndMiddleDiffers) {
  auto g = path(3);
  auto family = all_subsets(3, 1);
  TupleUniverse u(3, family, 3);
  ColorTable table;
  auto stable = stable_refinement(u, initial_coloring(g, u, table), table);
  auto at = [&](Vertex a, Vertex b, Vertex c) { return stable[u.find(std::vector<Vertex>{a, b, c})]; };
  EXPECT_EQ(at(0, 0, 0), at(2, 2, 2));
  EXPECT_NE(at(0, 0, 0), at(1, 1, 1));
  EXPECT_EQ(at(0, 1, 2), at(2, 1, 0));
  EXPECT_NE(at(0, 1, 2), at(1, 0, 2));
}

TEST(Refinement, JointRunKeepsUniversesApart) {
  auto family = all_subsets(4, 1);
  TupleUniverse a(4, family, 2), b(4, family, 2);
  ColorTable table;
  std::vector<WLColoring> init{initial_coloring(cycle(4), a, table), initial_coloring(path(4), b, table)};
  std::vector<const TupleUniverse*> us{&a, &b};
  auto out = stable_refinement(us, init, table);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].size(), a.size());
}

TEST(Compare, AcceptsRelabeledCopies) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto g = random_graph(6, 7, seed);
    auto perm = random_permutation(6, seed + 100);
    auto family = all_subsets(6, 2);
    EXPECT_EQ(compare_graphs(g, family, relabel(g, perm), relabel(family, perm), 3), Verdict::Accept);
  }
}

TEST(Compare, SeparatesCycleFromTwoTriangles) {
  std::vector<Edge> es{{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}};
  auto two = Graph::from_edges(6, es);
  auto family = all_subsets(6, 1);
  EXPECT_EQ(compare_graphs(cycle(6), family, two, family, 3), Verdict::Reject);
  EXPECT_EQ(compare_with_strong_capture(cycle(6), family, two, family), Verdict::Reject);
}

TEST(Compare, RejectsMismatchedWidthsAndBadDimensions) {
  auto g = cycle(4);
  EXPECT_EQ(compare_graphs(g, all_subsets(4, 1), g, all_subsets(4, 2), 3), Verdict::Reject);
  EXPECT_THROW(compare_graphs(g, all_subsets(4, 1), g, all_subsets(4, 1), 2), Error);
}

TEST(Compare, ColoredGraphsRespectOrderingColors) {
  ColoredGraph a{path(4), EquivalencePartition(4, {{0, 1}, {2}, {3}}), {}};
  a.coloring.set({0, 1}, 1);
  auto b = a;
  b.coloring = {};
  b.coloring.set({1, 0}, 1);
  auto family = all_subsets(4, 2);
  EXPECT_EQ(compare_graphs(a, family, b, family, 3), oracle::isomorphic(a, b) ? Verdict::Accept : Verdict::Reject);
  EXPECT_EQ(compare_graphs(a, family, a, family, 3), Verdict::Accept);
}
