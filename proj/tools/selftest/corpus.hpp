#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tdiso/graph.hpp"

namespace tdiso::selftest {

struct CorpusGraph {
  std::string name;
  Graph graph;
};

// Named small graphs (n <= 9): generated families, cycles, paths, cliques and
// seeded random graphs.
std::vector<CorpusGraph> desk_corpus();

// Exact parameters used to pick solver inputs.
struct Profile {
  std::size_t stw = 0;
  std::size_t cstw = 0;
  std::optional<std::size_t> ctdw;  // connected graphs only
  bool forest = false;
  bool treewidth_two = false;
};

Profile profile(const Graph& g);

// Degree <= 1 deletion and degree-2 suppression empty the graph exactly when
// it has no K4 minor.
bool treewidth_at_most_two(const Graph& g);
bool is_forest(const Graph& g);

// Same order and size: one edge moved to a non-edge (unchanged when impossible).
Graph perturb(const Graph& g, std::uint64_t seed);

}  // namespace tdiso::selftest
