#include <gtest/gtest.h>

#include "tdiso/error.hpp"
#include "tdiso/families.hpp"
#include "tdiso/io.hpp"

using namespace tdiso;

namespace {

std::size_t parse_error_line(std::string_view text) {
  try {
    parse_gi(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  ADD_FAILURE() << "accepted: " << text;
  return 999;
}

}  // namespace

TEST(Gi, ParsesHeaderEdgesAndComments) {
  auto doc = parse_gi("c a triangle\np gi 3 3\ne 1 2\ne 2 3\n\ne 3 1\n");
  EXPECT_EQ(doc.graph, cycle(3));
  ASSERT_EQ(doc.comments.size(), 1u);
  EXPECT_EQ(doc.comments[0], "a triangle");
  EXPECT_FALSE(doc.partition);
  EXPECT_EQ(doc.colored().partition, EquivalencePartition::identity(3));
}

TEST(Gi, PlainRoundTrip) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto g = random_graph(11, 17, seed);
    auto doc = parse_gi(serialize_gi(g, {"seed " + std::to_string(seed)}));
    EXPECT_EQ(doc.graph, g);
    EXPECT_EQ(doc.comments.back(), "seed " + std::to_string(seed));
  }
}

TEST(Gi, ColoredRoundTrip) {
  ColoredGraph g{cycle(5), EquivalencePartition(5, {{0, 3}, {1}, {2, 4}}), {}};
  g.coloring.set({3, 0}, 4);
  g.coloring.set({2, 4}, 1);
  auto doc = parse_gi(serialize_gi(g));
  EXPECT_EQ(doc.colored(), g);
}

TEST(Gi, ParsesClassesAndTupleColors) {
  auto doc = parse_gi("p gi 4 2\ne 1 2\ne 3 4\nq 1 2\nt 1 2 1 7\n");
  ASSERT_TRUE(doc.partition);
  EXPECT_EQ(doc.partition->class_count(), 3u);
  EXPECT_EQ(doc.coloring->get(std::vector<Vertex>{1, 0}), 7u);
}

TEST(Gi, ReportsErrorLines) {
  EXPECT_EQ(parse_error_line("e 1 2\n"), 1u);
  EXPECT_EQ(parse_error_line("p gi 3 1\ne 1 4\n"), 2u);
  EXPECT_EQ(parse_error_line("p gi 3 1\ne 2 2\n"), 2u);
  EXPECT_EQ(parse_error_line("p gi 3 1\nx 1\n"), 2u);
  EXPECT_EQ(parse_error_line("p gi 3 1\ne 1 two\n"), 2u);
  EXPECT_EQ(parse_error_line("p gi 3 2\ne 1 2\n"), 0u);
  EXPECT_EQ(parse_error_line(""), 0u);
  EXPECT_EQ(parse_error_line("p gi 3 0\np gi 3 0\n"), 2u);
}

TEST(Gi, RejectsRepeatedClassMembers) {
  try {
    parse_gi("p gi 3 0\nq 1 2\nq 2 3\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DuplicateClassMember);
  }
  EXPECT_THROW(parse_gi("p gi 3 0\nq 1 1\n"), Error);
}

TEST(Gi, RejectsOrderingOutsideItsClass) {
  EXPECT_THROW(parse_gi("p gi 3 0\nq 1 2\nt 1 1 3 5\n"), Error);
}

TEST(Bags, RoundTrip) {
  std::vector<VertexSet> sets{{0, 2}, {1}, {3, 4, 5}};
  EXPECT_EQ(parse_bag_family(serialize_bag_family(sets)), sets);
  EXPECT_THROW(parse_bag_family("1 x\n"), ParseError);
}

TEST(Decomposition, RoundTrip) {
  StrongTreeDecomposition d{{{0, 1}, {2}, {3, 4}}, {{0, 1}, {0, 2}}};
  auto back = parse_decomposition(serialize_decomposition(d, 2));
  EXPECT_EQ(back.decomposition.bags, d.bags);
  EXPECT_EQ(back.decomposition.tree, d.tree);
  ASSERT_TRUE(back.root);
  EXPECT_EQ(*back.root, 2u);
  EXPECT_FALSE(parse_decomposition(serialize_decomposition(d)).root);
}
