#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tdiso/decomposition.hpp"
#include "tdiso/families.hpp"

using namespace tdiso;

TEST(Generators, KpPathShape) {
  for (std::size_t k = 2; k <= 4; ++k)
    for (std::size_t p = 1; p <= 4; ++p) {
      auto g = kp_path(k, p);
      EXPECT_EQ(g.graph.order(), k + (k - 1) * p);
      EXPECT_EQ(g.graph.size(), 2 * (k - 1) * p);
      ASSERT_EQ(g.black.size(), k);
      for (std::size_t i = 0; i + 1 < k; ++i)
        for (std::size_t j = 0; j < p; ++j) {
          auto w = static_cast<Vertex>(k + i * p + j);
          EXPECT_TRUE(g.graph.adjacent(w, g.black[i]));
          EXPECT_TRUE(g.graph.adjacent(w, g.black[i + 1]));
          EXPECT_EQ(g.graph.degree(w), 2u);
        }
    }
}

TEST(Generators, KpCombShape) {
  for (std::size_t k = 1; k <= 3; ++k)
    for (std::size_t p = 1; p <= 4; ++p) {
      auto g = kp_comb(k, p);
      EXPECT_EQ(g.graph.order(), 2 * k + k * p);
      EXPECT_EQ(g.graph.size(), (k - 1) + 2 * k * p);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < p; ++j) {
          auto w = static_cast<Vertex>(2 * k + i * p + j);
          EXPECT_TRUE(g.graph.adjacent(w, static_cast<Vertex>(i)));
          EXPECT_TRUE(g.graph.adjacent(w, static_cast<Vertex>(k + i)));
        }
      EXPECT_TRUE(is_connected(g.graph));
    }
}

TEST(Generators, Basics) {
  EXPECT_EQ(cycle(5).size(), 5u);
  EXPECT_EQ(path(5).size(), 4u);
  EXPECT_EQ(complete(5).size(), 10u);
  EXPECT_EQ(random_graph(8, 28, 1), complete(8));
}

TEST(BruteWidths, StrongWidthsMatchPartitionOracle) {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const std::size_t n = 5 + seed % 3;
    auto g = random_graph(n, n + seed % 5, seed);
    EXPECT_EQ(brute_stw(g), oracle::strong_width(g, false)) << "seed " << seed;
    EXPECT_EQ(brute_cstw(g), oracle::strong_width(g, true)) << "seed " << seed;
  }
  EXPECT_EQ(brute_stw(complete(4)), oracle::strong_width(complete(4), false));
  EXPECT_EQ(brute_cstw(complete(3)), oracle::strong_width(complete(3), true));
}

TEST(BruteWidths, PartitionVisitorYieldsValidDecompositions) {
  auto g = kp_comb(2, 2).graph;
  std::size_t seen = 0;
  for_each_strong_partition(g, 2, true, [&](const std::vector<VertexSet>& parts) {
    auto d = partition_to_strong_td(g, parts);
    EXPECT_TRUE(validate_connected_strong_td(g, d));
    EXPECT_LE(d.width(), 2u);
    ++seen;
    return true;
  });
  EXPECT_GT(seen, 0u);
}

TEST(BruteWidths, ConnectedRootWidthMatchesOracle) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto g = random_graph(7, 9, seed);
    if (!is_connected(g)) continue;
    std::vector<VertexSet> want_roots;
    auto want = oracle::connected_root_width(g, &want_roots);
    std::sort(want_roots.begin(), want_roots.end());
    auto got = brute_ctdw(g);
    EXPECT_EQ(got.width, Width::of(want)) << "seed " << seed;
    EXPECT_EQ(got.roots, want_roots) << "seed " << seed;
  }
}

TEST(BruteWidths, SingleVertexRoots) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto g = random_graph(8, 10, seed);
    if (!is_connected(g)) continue;
    std::size_t want = g.order();
    for (Vertex v = 0; v < g.order(); ++v) want = std::min(want, oracle::level_width(g, {v}));
    EXPECT_EQ(brute_rtdw(g).width, Width::of(want));
  }
}

TEST(BruteWidths, KpPathAgainstOracle) {
  for (std::size_t k = 2; k <= 3; ++k)
    for (std::size_t p = 1; p <= 3; ++p) {
      auto g = kp_path(k, p);
      std::vector<VertexSet> roots;
      auto want = oracle::connected_root_width(g.graph, &roots);
      auto got = brute_ctdw(g.graph);
      EXPECT_EQ(got.width, Width::of(want));
      EXPECT_EQ(got.roots.size(), roots.size());
    }
}
