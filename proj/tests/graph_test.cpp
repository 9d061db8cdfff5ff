#include <gtest/gtest.h>

#include <algorithm>

#include "oracles.hpp"
#include "tdiso/error.hpp"
#include "tdiso/families.hpp"
#include "tdiso/graph.hpp"

using namespace tdiso;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::BadParams;
}

}  // namespace

TEST(Graph, FromEdgesMergesParallelEdges) {
  std::vector<Edge> es{{0, 1}, {1, 0}, {1, 2}, {2, 1}, {0, 1}};
  auto g = Graph::from_edges(4, es);
  EXPECT_EQ(g.order(), 4u);
  EXPECT_EQ(g.size(), 2u);
  EXPECT_TRUE(g.adjacent(1, 0));
  EXPECT_FALSE(g.adjacent(0, 2));
  EXPECT_EQ(g.degree(3), 0u);
  EXPECT_EQ(g.max_degree(), 2u);
  EXPECT_EQ(g.edges(), (std::vector<Edge>{{0, 1}, {1, 2}}));
}

TEST(Graph, RejectsBadEdges) {
  std::vector<Edge> loop{{1, 1}}, far{{0, 3}};
  EXPECT_EQ(code_of([&] { Graph::from_edges(3, loop); }), ErrorCode::SelfLoop);
  EXPECT_EQ(code_of([&] { Graph::from_edges(3, far); }), ErrorCode::OutOfRange);
}

TEST(Graph, EdgesAreSortedAndMatchAdjacency) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto g = random_graph(9, 14, seed);
    auto es = g.edges();
    EXPECT_TRUE(std::is_sorted(es.begin(), es.end()));
    EXPECT_EQ(es.size(), 14u);
    auto a = oracle::matrix(g);
    std::size_t count = 0;
    for (Vertex u = 0; u < 9; ++u)
      for (Vertex v = 0; v < 9; ++v) {
        EXPECT_EQ(g.adjacent(u, v), a[u][v] != 0);
        count += a[u][v];
      }
    EXPECT_EQ(count, 28u);
  }
}

TEST(Graph, RandomGraphIsDeterministic) {
  EXPECT_EQ(random_graph(12, 20, 7), random_graph(12, 20, 7));
  EXPECT_NE(random_graph(12, 20, 7), random_graph(12, 20, 8));
  auto p = random_permutation(10, 3);
  std::sort(p.begin(), p.end());
  for (Vertex v = 0; v < 10; ++v) EXPECT_EQ(p[v], v);
}

TEST(Graph, InducedSubgraphKeepsOriginalNames) {
  auto g = cycle(6);
  std::vector<Vertex> s{4, 0, 5};
  auto sub = induced_subgraph(g, s);
  ASSERT_EQ(sub.graph.order(), 3u);
  EXPECT_EQ(sub.graph.size(), 2u);
  for (auto [u, v] : sub.graph.edges()) EXPECT_TRUE(g.adjacent(sub.original[u], sub.original[v]));
}

TEST(Graph, ComponentsAndDistances) {
  std::vector<Edge> es{{0, 1}, {1, 2}, {3, 4}};
  auto g = Graph::from_edges(6, es);
  auto cs = connected_components(g);
  ASSERT_EQ(cs.size(), 3u);
  EXPECT_FALSE(is_connected(g));
  EXPECT_TRUE(is_connected(path(5)));
  std::vector<Vertex> src{0};
  auto d = distances_from(g, src);
  EXPECT_EQ(d[2], 2u);
  EXPECT_GT(d[3], g.order());
  std::vector<Vertex> s{1, 3};
  EXPECT_EQ(neighborhood_of_set(g, s), (VertexSet{0, 2, 4}));
}

TEST(Graph, DistancesMatchOracle) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto g = random_graph(10, 12, seed);
    std::vector<Vertex> src{static_cast<Vertex>(seed % 10), static_cast<Vertex>((seed * 3) % 10)};
    auto want = oracle::bfs(oracle::matrix(g), src);
    auto got = distances_from(g, src);
    for (Vertex v = 0; v < 10; ++v)
      if (want[v] != static_cast<std::size_t>(-1)) EXPECT_EQ(got[v], want[v]);
  }
}

TEST(Graph, RelabelIsAnIsomorphism) {
  auto g = random_graph(7, 10, 5);
  auto perm = random_permutation(7, 11);
  auto h = relabel(g, perm);
  for (auto [u, v] : g.edges()) EXPECT_TRUE(h.adjacent(perm[u], perm[v]));
  EXPECT_EQ(h.size(), g.size());
  EXPECT_TRUE(oracle::isomorphic(g, h));
}

TEST(Partition, ClassesOrderedBySmallestMember) {
  EquivalencePartition r(5, {{3, 4}, {0, 2}, {1}});
  EXPECT_EQ(r.class_count(), 3u);
  EXPECT_EQ(r.members(0), (VertexSet{0, 2}));
  EXPECT_EQ(r.members(1), (VertexSet{1}));
  EXPECT_EQ(r.class_of(4), 2u);
  EXPECT_EQ(r.largest_class(), 2u);
  EXPECT_EQ(EquivalencePartition::identity(4).largest_class(), 1u);
}

TEST(Partition, RejectsOverlapsAndGaps) {
  EXPECT_THROW(EquivalencePartition(3, {{0, 1}, {1, 2}}), Error);
  EXPECT_THROW(EquivalencePartition(3, {{0, 1}}), Error);
}

TEST(Partition, QuotientGraph) {
  auto g = cycle(6);
  EquivalencePartition r(6, {{0, 1}, {2, 3}, {4, 5}});
  auto q = quotient_graph(g, r);
  EXPECT_EQ(q.graph.order(), 3u);
  EXPECT_EQ(q.graph.size(), 3u);
  EXPECT_EQ(q.projection[3], 1u);
}

TEST(TupleColoringTest, LookupAndValidation) {
  EquivalencePartition r(4, {{0, 1}, {2}, {3}});
  TupleColoring tc;
  tc.set({1, 0}, 5);
  EXPECT_EQ(tc.get(std::vector<Vertex>{1, 0}), 5u);
  EXPECT_EQ(tc.get(std::vector<Vertex>{0, 1}), kUncolored);
  EXPECT_NO_THROW(check_tuple_coloring(r, tc));
  tc.set({0, 2}, 1);
  EXPECT_EQ(code_of([&] { check_tuple_coloring(r, tc); }), ErrorCode::PermutationMismatch);
}

TEST(ColoredGraphTest, RelabelMovesOrderings) {
  ColoredGraph g{path(3), EquivalencePartition(3, {{0, 1}, {2}}), {}};
  g.coloring.set({0, 1}, 2);
  std::vector<Vertex> perm{2, 1, 0};
  auto h = relabel(g, perm);
  EXPECT_EQ(h.coloring.get(std::vector<Vertex>{2, 1}), 2u);
  EXPECT_EQ(h.partition.members(h.partition.class_of(2)), (VertexSet{1, 2}));
  EXPECT_TRUE(oracle::isomorphic(g, h));
}
