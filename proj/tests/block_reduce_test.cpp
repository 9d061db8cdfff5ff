#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "tdiso/block_reduce.hpp"
#include "tdiso/error.hpp"
#include "tdiso/families.hpp"
#include "tdiso/solvers.hpp"

using namespace tdiso;

namespace {

Verdict colored_oracle(const ColoredGraph& a, const ColoredGraph& b) {
  return oracle::isomorphic(a, b) ? Verdict::Accept : Verdict::Reject;
}

Verdict plain_oracle(const Graph& a, const Graph& b) { return brute_force_iso(a, b, 4096).verdict; }

// Random partition into classes of size <= 2 with some colored orderings.
ColoredGraph random_colored(const Graph& g, std::mt19937_64& rng) {
  const auto n = g.order();
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<VertexSet> classes;
  for (std::size_t i = 0; i < n;) {
    if (i + 1 < n && rng() % 3 == 0) {
      classes.push_back(make_vertex_set({order[i], order[i + 1]}));
      i += 2;
    } else {
      classes.push_back({order[i++]});
    }
  }
  ColoredGraph out{g, EquivalencePartition(n, classes), {}};
  for (const auto& c : out.partition.classes())
    if (rng() % 2) {
      auto ord = c;
      if (rng() % 2) std::reverse(ord.begin(), ord.end());
      out.coloring.set(ord, static_cast<Color>(1 + rng() % 2));
    }
  return out;
}

ColoredGraph shuffled(const ColoredGraph& g, std::uint64_t seed) {
  return relabel(g, random_permutation(g.graph.order(), seed));
}

}  // namespace

TEST(Blocks, TwoTrianglesShareACut) {
  std::vector<Edge> es{{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 2}, {4, 5}};
  auto g = Graph::from_edges(6, es);
  auto r = EquivalencePartition::identity(6);
  auto f = blocks_relative(g, r);
  EXPECT_EQ(f.blocks, (std::vector<VertexSet>{{0, 1, 2}, {2, 3, 4}, {4, 5}}));
  ASSERT_EQ(f.cut_classes.size(), 2u);
  EXPECT_EQ(r.members(f.cut_classes[0]), (VertexSet{2}));
  EXPECT_EQ(f.tree.size(), 4u);
}

TEST(Blocks, ClassesActAsSingleVertices) {
  // Two paths 0-1-2 and 3-4-5 glued through the class {1, 4}.
  std::vector<Edge> es{{0, 1}, {1, 2}, {3, 4}, {4, 5}};
  auto g = Graph::from_edges(6, es);
  EquivalencePartition r(6, {{0}, {1, 4}, {2}, {3}, {5}});
  auto f = blocks_relative(g, r);
  EXPECT_EQ(f.blocks.size(), 4u);
  ASSERT_EQ(f.cut_classes.size(), 1u);
  EXPECT_EQ(r.members(f.cut_classes[0]), (VertexSet{1, 4}));
}

TEST(Blocks, IsoViaBlocksMatchesOracle) {
  std::mt19937_64 rng(17);
  std::size_t accepted = 0;
  for (int round = 0; round < 60; ++round) {
    const std::size_t n = 5 + rng() % 3;
    auto g = random_graph(n, n - 1 + rng() % 3, rng());
    auto a = random_colored(g, rng);
    auto b = round % 2 ? shuffled(a, rng()) : random_colored(random_graph(n, g.size(), rng()), rng);
    BlockStats stats;
    auto v = iso_via_blocks(a, b, colored_oracle, &stats);
    ASSERT_EQ(v == Verdict::Accept, oracle::isomorphic(a, b)) << "round " << round;
    accepted += v == Verdict::Accept;
  }
  EXPECT_GE(accepted, 30u);
}

TEST(Blocks, InfeasibleOracleAborts) {
  auto g = ColoredGraph::plain(cycle(5));
  auto v = iso_via_blocks(g, g, [](const ColoredGraph&, const ColoredGraph&) { return Verdict::Infeasible; });
  EXPECT_EQ(v, Verdict::Infeasible);
}

TEST(Gadget, EncodingReflectsColoredIsomorphism) {
  std::mt19937_64 rng(23);
  std::size_t same = 0;
  for (int round = 0; round < 30; ++round) {
    auto g = random_graph(5, 4 + rng() % 3, rng());
    auto a = random_colored(g, rng);
    auto b = round % 2 ? shuffled(a, rng()) : random_colored(g, rng);
    auto [ea, eb] = gadget_encode_pair(a, b, 2);
    const bool want = oracle::isomorphic(a, b);
    EXPECT_EQ(brute_force_iso(ea, eb, 4096).verdict == Verdict::Accept, want) << "round " << round;
    for (Vertex u = 0; u < 5; ++u)
      for (Vertex v = 0; v < 5; ++v) EXPECT_EQ(ea.adjacent(u, v), a.graph.adjacent(u, v));
    same += want;
  }
  EXPECT_GE(same, 15u);
}

TEST(Gadget, ClassTooLarge) {
  ColoredGraph g{path(3), EquivalencePartition(3, {{0, 1, 2}}), {}};
  try {
    gadget_encode(g, GadgetPalette(g, g), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ClassTooLarge);
  }
}

TEST(Gadget, PaletteCodes) {
  ColoredGraph a{path(2), EquivalencePartition(2, {{0, 1}}), {}};
  a.coloring.set({0, 1}, 9);
  GadgetPalette pal(a, a);
  EXPECT_EQ(pal.code(kUncolored), GadgetPalette::kUncoloredCode);
  EXPECT_GT(pal.code(9), GadgetPalette::kUncoloredCode);
}

TEST(DegreeReduction, AgreesWithOracleAndRespectsBound) {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    auto g = random_graph(7, 8 + seed % 3, seed);
    const auto k = std::max<std::size_t>(2, brute_stw(g));
    auto h = seed % 2 ? relabel(g, random_permutation(7, seed)) : random_graph(7, g.size(), seed + 500);
    ReductionTrace trace;
    auto v = stw_to_degree_iso(g, h, k, plain_oracle, &trace);
    if (v == Verdict::Infeasible) continue;
    EXPECT_EQ(v == Verdict::Accept, oracle::isomorphic(g, h)) << "seed " << seed;
    for (const auto& e : trace.entries) EXPECT_LE(e.max_degree, block_degree_bound(k));
    EXPECT_EQ(trace.violations(), 0u);
  }
}

TEST(DegreeReduction, KpPathNeedsLargerK) {
  auto g = kp_path(3, 4).graph;
  auto h = relabel(g, random_permutation(g.order(), 9));
  EXPECT_EQ(stw_to_degree_iso(g, h, 2, plain_oracle), Verdict::Infeasible);
  EXPECT_EQ(stw_to_degree_iso(g, h, 3, plain_oracle), Verdict::Accept);
}
