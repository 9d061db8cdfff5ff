#pragma once

#include <cstddef>
#include <vector>

#include "tdiso/decomposition.hpp"
#include "tdiso/graph.hpp"
#include "tdiso/wl.hpp"

namespace tdiso {

// Root sets S with tdw_S(G) <= k, closed under isomorphism of G.
struct RootSetFamily {
  std::vector<VertexSet> sets;  // sorted, deduplicated
  std::size_t k = 0;
  // Largest neighborhood branched over during the search.
  std::size_t widest_branch = 0;
  // Saturated working sets visited.
  std::size_t explored = 0;
};

// Throws NotConnected, BadParams (k = 0). An empty family is a normal result.
RootSetFamily enumerate_root_sets(const Graph& g, std::size_t k);

// Grows s by vertices with at least `paths` disjoint paths into it until none is left.
VertexSet saturate(const Graph& g, VertexSet s, std::size_t paths);

// All bags of the minimal decompositions of width <= k rooted at the family's sets.
BagFamily bags_from_roots(const Graph& g, const RootSetFamily& roots, std::size_t k);

// Throws NotConnected when both inputs are disconnected.
Verdict ctdw_iso(const Graph& g1, const Graph& g2, std::size_t k, const WlOptions& opt = {});

}  // namespace tdiso
