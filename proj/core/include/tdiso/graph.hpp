#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace tdiso {

using Vertex = std::uint32_t;
using Color = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;
// Sorted, duplicate-free.
using VertexSet = std::vector<Vertex>;

inline constexpr Color kUncolored = 0;

VertexSet make_vertex_set(std::vector<Vertex> vs);

// Simple undirected graph on vertices 0..n-1. Immutable once built.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n);

  // Throws OutOfRange / SelfLoop. Parallel edges are merged.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges);

  std::size_t order() const noexcept { return adj_.size(); }
  std::size_t size() const noexcept { return m_; }

  std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }
  std::size_t degree(Vertex v) const { return adj_[v].size(); }
  std::size_t max_degree() const noexcept;
  bool adjacent(Vertex u, Vertex v) const;

  // Each edge once, as (u, v) with u < v, lexicographically sorted.
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph& a, const Graph& b) { return a.adj_ == b.adj_; }

 private:
  std::vector<std::vector<Vertex>> adj_;
  std::vector<std::uint64_t> bits_;  // adjacency matrix rows, small graphs only
  std::size_t words_ = 0;
  std::size_t m_ = 0;
};

Graph build_graph(std::size_t n, std::span<const Edge> edges);

// Vertex v of the result corresponds to original[v].
struct InducedSubgraph {
  Graph graph;
  std::vector<Vertex> original;
};

InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> s);

std::vector<VertexSet> connected_components(const Graph& g);
bool is_connected(const Graph& g);
VertexSet neighborhood_of_set(const Graph& g, std::span<const Vertex> s);
// BFS distances from a set; unreachable vertices get npos.
std::vector<std::size_t> distances_from(const Graph& g, std::span<const Vertex> sources);
Graph relabel(const Graph& g, std::span<const Vertex> perm);

class EquivalencePartition {
 public:
  EquivalencePartition() = default;
  // Classes are reordered by smallest member.
  EquivalencePartition(std::size_t n, std::vector<VertexSet> classes);
  static EquivalencePartition identity(std::size_t n);

  std::size_t vertex_count() const noexcept { return class_of_.size(); }
  std::size_t class_count() const noexcept { return classes_.size(); }
  const std::vector<VertexSet>& classes() const noexcept { return classes_; }
  const VertexSet& members(std::size_t c) const { return classes_[c]; }
  std::size_t class_of(Vertex v) const { return class_of_[v]; }
  // Size of the largest class.
  std::size_t largest_class() const noexcept;

  friend bool operator==(const EquivalencePartition&, const EquivalencePartition&) = default;

 private:
  std::vector<VertexSet> classes_;
  std::vector<std::uint32_t> class_of_;
};

// Colors keyed by an ordering of one equivalence class. Absent orderings are uncolored.
class TupleColoring {
 public:
  void set(std::vector<Vertex> ordering, Color c);
  Color get(std::span<const Vertex> ordering) const;
  bool empty() const noexcept { return entries_.empty(); }
  Color max_color() const noexcept;
  const std::map<std::vector<Vertex>, Color>& entries() const noexcept { return entries_; }

  friend bool operator==(const TupleColoring&, const TupleColoring&) = default;

 private:
  std::map<std::vector<Vertex>, Color> entries_;
};

// Throws PermutationMismatch if a keyed ordering is not a permutation of one class.
void check_tuple_coloring(const EquivalencePartition& r, const TupleColoring& tc);

struct ColoredGraph {
  Graph graph;
  EquivalencePartition partition;
  TupleColoring coloring;

  static ColoredGraph plain(Graph g);
  friend bool operator==(const ColoredGraph&, const ColoredGraph&) = default;
};

ColoredGraph induced_colored(const ColoredGraph& g, std::span<const Vertex> s,
                             std::vector<Vertex>* original = nullptr);
ColoredGraph relabel(const ColoredGraph& g, std::span<const Vertex> perm);

struct QuotientGraph {
  Graph graph;
  std::vector<std::uint32_t> projection;
};

QuotientGraph quotient_graph(const Graph& g, const EquivalencePartition& r);

}  // namespace tdiso
