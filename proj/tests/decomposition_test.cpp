#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tdiso/decomposition.hpp"
#include "tdiso/error.hpp"
#include "tdiso/families.hpp"

using namespace tdiso;

namespace {

std::vector<VertexSet> sorted_bags(std::vector<VertexSet> bags) {
  std::sort(bags.begin(), bags.end());
  return bags;
}

Graph connected_random(std::size_t n, std::size_t m, std::uint64_t seed) {
  for (;; ++seed) {
    auto g = random_graph(n, m, seed);
    if (is_connected(g)) return g;
  }
}

}  // namespace

TEST(MinimalTdd, BagsMatchLevelOracle) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const std::size_t n = 6 + seed % 5;
    auto g = connected_random(n, n + seed % 6, seed * 101);
    auto roots = oracle::subsets_of(n, 2);
    const auto& s = roots[seed % roots.size()];
    auto m = minimal_tdd(g, s);
    EXPECT_TRUE(validate_tdd(g, m.tdd)) << "seed " << seed;
    EXPECT_EQ(sorted_bags(m.tdd.decomposition.bags), sorted_bags(oracle::level_bags(g, s))) << "seed " << seed;
    EXPECT_EQ(m.width, Width::of(oracle::level_width(g, s)));
    EXPECT_EQ(m.tdd.decomposition.bags[m.tdd.root], s);
    EXPECT_EQ(tdw_of_root(g, s), m.width);
  }
}

TEST(MinimalTdd, LevelsCountDistance) {
  auto g = path(5);
  std::vector<Vertex> s{0};
  auto m = minimal_tdd(g, s);
  ASSERT_EQ(m.tdd.decomposition.bags.size(), 5u);
  for (std::size_t b = 0; b < 5; ++b) EXPECT_EQ(m.level[b], m.tdd.decomposition.bags[b].front());
  EXPECT_EQ(m.width, Width::of(1));
}

TEST(MinimalTdd, EmptyRootThrows) {
  try {
    minimal_tdd(path(3), {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyRoot);
  }
}

TEST(MinimalTdd, DisconnectedGraphHasInfiniteWidth) {
  std::vector<Edge> es{{0, 1}};
  std::vector<Vertex> s{0};
  EXPECT_TRUE(tdw_of_root(Graph::from_edges(3, es), s).is_infinite());
}

TEST(Width, Ordering) {
  EXPECT_LT(Width::of(3), Width::of(4));
  EXPECT_LT(Width::of(100), Width::infinite());
  EXPECT_EQ(Width::infinite(), Width::infinite());
  EXPECT_TRUE(Width::of(2) <= 2);
  EXPECT_FALSE(Width::infinite() <= 1000);
  EXPECT_EQ(Width::infinite().to_string(), "inf");
}

TEST(Validate, StrongTreeDecompositions) {
  auto g = cycle(4);
  StrongTreeDecomposition ok{{{0}, {1, 3}, {2}}, {{0, 1}, {1, 2}}};
  EXPECT_TRUE(validate_strong_td(g, ok));
  EXPECT_EQ(ok.width(), 2u);
  StrongTreeDecomposition cut_edge{{{0}, {1, 3}, {2}}, {{0, 1}, {0, 2}}};
  EXPECT_FALSE(validate_strong_td(g, cut_edge));
  StrongTreeDecomposition overlap{{{0, 1}, {1, 3}, {2}}, {{0, 1}, {1, 2}}};
  EXPECT_FALSE(validate_strong_td(g, overlap));
  StrongTreeDecomposition missing{{{0}, {1, 3}}, {{0, 1}}};
  EXPECT_FALSE(validate_strong_td(g, missing));
  StrongTreeDecomposition not_tree{{{0}, {1, 3}, {2}}, {{0, 1}}};
  EXPECT_FALSE(validate_strong_td(g, not_tree));
  EXPECT_FALSE(validate_connected_strong_td(g, ok));
  StrongTreeDecomposition connected{{{0, 1}, {2, 3}}, {{0, 1}}};
  EXPECT_TRUE(validate_connected_strong_td(g, connected));
}

TEST(Validate, TreeDecompositions) {
  auto g = cycle(4);
  TreeDecomposition good{{{0, 1, 2}, {0, 2, 3}}, {{0, 1}}};
  EXPECT_TRUE(validate_tree_decomposition(g, good));
  TreeDecomposition uncovered{{{0, 1, 2}, {2, 3}}, {{0, 1}}};
  EXPECT_FALSE(validate_tree_decomposition(g, uncovered));
  TreeDecomposition broken{{{0, 1}, {1, 2}, {2, 3, 0}}, {{0, 1}, {1, 2}}};
  EXPECT_FALSE(validate_tree_decomposition(g, broken));
  EXPECT_TRUE(is_tree(1, {}));
  std::vector<TreeEdge> cyc{{0, 1}, {1, 2}, {2, 0}};
  EXPECT_FALSE(is_tree(3, cyc));
}

TEST(Semismooth, ConversionFromStrongDecompositions) {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    auto g = random_graph(7, 8, seed);
    const auto w = brute_stw(g);
    for_each_strong_partition(g, w, false, [&](const std::vector<VertexSet>& parts) {
      auto d = partition_to_strong_td(g, parts);
      EXPECT_TRUE(validate_strong_td(g, d));
      auto t = strong_td_to_semismooth(d);
      EXPECT_TRUE(validate_tree_decomposition(g, t)) << "seed " << seed;
      EXPECT_TRUE(validate_semi_smooth(t)) << "seed " << seed;
      auto unions = pairwise_union_family(BagFamily(d.bags));
      for (const auto& b : t.bags)
        EXPECT_TRUE(std::any_of(unions.sets().begin(), unions.sets().end(), [&](const VertexSet& u) {
          return std::includes(u.begin(), u.end(), b.begin(), b.end());
        }));
      return false;
    });
  }
}

TEST(BagFamilyTest, CanonicalAndRelabel) {
  BagFamily f({{2, 3}, {0}, {2, 3}, {1, 4, 5}});
  EXPECT_EQ(f.size(), 3u);
  EXPECT_EQ(f.width(), 3u);
  EXPECT_TRUE(f.contains(std::vector<Vertex>{2, 3}));
  EXPECT_FALSE(f.contains(std::vector<Vertex>{2}));
  std::vector<Vertex> perm{5, 4, 3, 2, 1, 0};
  auto g = relabel(f, perm);
  EXPECT_TRUE(g.contains(std::vector<Vertex>{5}));
  EXPECT_TRUE(g.contains(std::vector<Vertex>{0, 1, 4}));
  auto u = pairwise_union_family(BagFamily({{0}, {1}, {2, 3}}));
  EXPECT_TRUE(u.contains(std::vector<Vertex>{0, 2, 3}));
  EXPECT_TRUE(u.contains(std::vector<Vertex>{1}));
}
