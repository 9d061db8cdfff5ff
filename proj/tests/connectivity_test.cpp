#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tdiso/connectivity.hpp"
#include "tdiso/error.hpp"
#include "tdiso/families.hpp"

using namespace tdiso;

TEST(Menger, MatchesCutEnumeration) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const std::size_t n = 5 + seed % 4;
    auto g = random_graph(n, std::min(n * (n - 1) / 2, n + seed % 7), seed);
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v)
        ASSERT_EQ(max_disjoint_paths(g, u, v), oracle::disjoint_paths(g, u, v))
            << "seed " << seed << " pair " << u << "," << v;
  }
}

TEST(Menger, KnownGraphs) {
  EXPECT_EQ(max_disjoint_paths(complete(5), 0, 4), 4u);
  EXPECT_EQ(max_disjoint_paths(cycle(7), 0, 3), 2u);
  auto kp = kp_path(2, 6);
  EXPECT_EQ(max_disjoint_paths(kp.graph, 0, 1), 6u);
  EXPECT_THROW(max_disjoint_paths(cycle(4), 2, 2), Error);
}

TEST(Menger, PathsToSetMatchContraction) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const std::size_t n = 7;
    auto g = random_graph(n, 10, seed);
    auto s = make_vertex_set({static_cast<Vertex>(seed % n), static_cast<Vertex>((seed + 2) % n)});
    // Contract s into vertex n, subdividing each edge into s so parallel edges stay apart.
    std::vector<Edge> es;
    Vertex next = static_cast<Vertex>(n + 1);
    for (auto [a, b] : g.edges()) {
      bool ia = std::binary_search(s.begin(), s.end(), a), ib = std::binary_search(s.begin(), s.end(), b);
      if (ia && ib) continue;
      if (!ia && !ib) {
        es.emplace_back(a, b);
        continue;
      }
      es.emplace_back(ia ? b : a, next);
      es.emplace_back(next++, static_cast<Vertex>(n));
    }
    auto contracted = Graph::from_edges(next, es);
    for (Vertex v = 0; v < n; ++v) {
      if (std::binary_search(s.begin(), s.end(), v)) continue;
      EXPECT_EQ(max_disjoint_paths_to_set(g, v, s), oracle::disjoint_paths(contracted, v, static_cast<Vertex>(n)))
          << "seed " << seed << " vertex " << v;
    }
  }
}

TEST(KCon, PairsAndClosureMatchOracle) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const std::size_t n = 7;
    auto g = random_graph(n, 12, seed);
    for (std::size_t t = 2; t <= 4; ++t) {
      std::vector<Edge> want;
      std::vector<std::size_t> root(n);
      std::iota(root.begin(), root.end(), 0);
      std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        return root[x] == x ? x : root[x] = find(root[x]);
      };
      for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
          if (oracle::disjoint_paths(g, u, v) >= t) {
            want.emplace_back(u, v);
            root[find(u)] = find(v);
          }
      EXPECT_EQ(kcon_pairs(g, t), want);
      auto closure = kcon_closure(g, t);
      for (Vertex u = 0; u < n; ++u)
        for (Vertex v = 0; v < n; ++v)
          EXPECT_EQ(closure.class_of(u) == closure.class_of(v), find(u) == find(v));
    }
  }
}
