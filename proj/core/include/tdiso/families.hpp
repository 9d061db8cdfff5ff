#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tdiso/decomposition.hpp"
#include "tdiso/graph.hpp"

namespace tdiso {

// A generated graph with its black vertices (the path vertices of the construction).
struct LabeledGraph {
  Graph graph;
  std::vector<Vertex> black;
  std::string name;
};

// P_k with every edge replaced by p internally disjoint paths of length 2.
// Blacks are 0..k-1; the whites of bundle i are k+i*p .. k+i*p+p-1.
LabeledGraph kp_path(std::size_t k, std::size_t p);
// P_k with a copy of K_{2,p} attached at every path vertex. Path vertex i, its
// partner k+i and the whites 2k+i*p .. 2k+i*p+p-1.
LabeledGraph kp_comb(std::size_t k, std::size_t p);

Graph cycle(std::size_t n);
Graph path(std::size_t n);
Graph complete(std::size_t n);
// m distinct edges chosen uniformly; the same seed gives the same graph on every platform.
Graph random_graph(std::size_t n, std::size_t m, std::uint64_t seed);
// A uniformly random permutation of 0..n-1, seeded the same way.
std::vector<Vertex> random_permutation(std::size_t n, std::uint64_t seed);

inline constexpr std::size_t kBruteWidthCap = 10;
inline constexpr std::size_t kBruteRootCap = 40;

struct RootedWidth {
  Width width;
  std::vector<VertexSet> roots;  // every optimal root, sorted
};

// Minimum tdw over connected root sets. Throws TooLarge above cap vertices.
RootedWidth brute_ctdw(const Graph& g, std::size_t cap = kBruteRootCap);
// Minimum tdw over single-vertex roots.
RootedWidth brute_rtdw(const Graph& g);

// Visits every partition into bags of size <= w whose quotient is a forest
// (bags connected too when requested). The visitor returns false to stop.
void for_each_strong_partition(const Graph& g, std::size_t w, bool connected,
                               const std::function<bool(const std::vector<VertexSet>&)>& visit,
                               std::size_t cap = kBruteWidthCap);

// Exact widths by exhaustive partition search. Throw TooLarge above cap.
std::size_t brute_stw(const Graph& g, std::size_t cap = kBruteWidthCap);
std::size_t brute_cstw(const Graph& g, std::size_t cap = kBruteWidthCap);

// Tree edges between the bags of a partition whose quotient is a forest; the
// forest is completed to a tree with extra edges.
StrongTreeDecomposition partition_to_strong_td(const Graph& g, const std::vector<VertexSet>& bags);

}  // namespace tdiso
