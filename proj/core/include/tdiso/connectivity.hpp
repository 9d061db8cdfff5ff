#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "tdiso/graph.hpp"

namespace tdiso {

// Internally vertex-disjoint u-v paths; a direct edge counts as one path. Throws SameVertex.
std::size_t max_disjoint_paths(const Graph& g, Vertex u, Vertex v);

// Internally vertex-disjoint paths from v to the set s, with s contracted to one
// target (edges into s stay distinct); vertices of s only end paths. v must lie outside s.
std::size_t max_disjoint_paths_to_set(const Graph& g, Vertex v, std::span<const Vertex> s);

// Unordered pairs (u < v) joined by at least `threshold` disjoint paths.
std::vector<Edge> kcon_pairs(const Graph& g, std::size_t threshold);

// Transitive closure of kcon_pairs as a partition.
EquivalencePartition kcon_closure(const Graph& g, std::size_t threshold);

}  // namespace tdiso
