#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "tdiso/graph.hpp"
#include "tdiso/wl.hpp"

namespace tdiso {

// Block-cut structure of the quotient graph, lifted back to vertex sets.
struct BlockForest {
  std::vector<VertexSet> blocks;             // sorted by vertex set
  std::vector<std::size_t> cut_classes;      // partition class indices
  std::vector<std::vector<std::size_t>> block_cuts;  // per block, positions in cut_classes
  std::vector<std::pair<std::size_t, std::size_t>> tree;  // (block, cut position)
};

BlockForest blocks_relative(const Graph& g, const EquivalencePartition& r);

// Decides isomorphism of two tuple-colored graphs that are biconnected relative
// to their partitions.
using BlockOracle = std::function<Verdict(const ColoredGraph&, const ColoredGraph&)>;

struct BlockStats {
  std::size_t rounds = 0;
  std::size_t oracle_calls = 0;
};

// Peels leaf blocks of the block-cut trees, folding their isomorphism types into
// colors of the cut-class orderings. An Infeasible oracle answer aborts the run.
Verdict iso_via_blocks(const ColoredGraph& g1, const ColoredGraph& g2, const BlockOracle& oracle,
                       BlockStats* stats = nullptr);

// Cheap necessary conditions for colored isomorphism.
bool same_invariants(const ColoredGraph& a, const ColoredGraph& b);

// Shared numbering of ordering colors for encodings that will be compared.
class GadgetPalette {
 public:
  GadgetPalette() = default;
  GadgetPalette(const ColoredGraph& a, const ColoredGraph& b);

  static constexpr std::size_t kOriginal = 1;
  static constexpr std::size_t kPath = 2;
  static constexpr std::size_t kUncoloredCode = 3;
  std::size_t code(Color c) const;

 private:
  std::vector<Color> colors_;
};

// Uncolored graph: one path v0..v|C| per ordering of each class (v_i joined to
// the i-th vertex of the ordering, v0 tagged with the ordering's color), then
// every non-hair vertex gets three pendant paths of lengths 3x-2, 3x-1, 3x for
// its code x. Original vertices keep indices 0..n-1. Throws ClassTooLarge.
Graph gadget_encode(const ColoredGraph& g, const GadgetPalette& palette, std::size_t max_class);
std::pair<Graph, Graph> gadget_encode_pair(const ColoredGraph& a, const ColoredGraph& b, std::size_t max_class);

// Degree bound for graphs of strong tree width <= k that are biconnected
// relative to the closure of the 2k-connectivity relation; valid for k >= 2.
constexpr std::size_t block_degree_bound(std::size_t k) { return 2 * k * k * (k - 1) + k - 1; }

struct TraceEntry {
  std::size_t round = 0;
  std::pair<std::size_t, std::size_t> block_sizes;
  std::size_t max_degree = 0;      // before gadget encoding
  std::size_t encoded_degree = 0;  // 0 when the instance was not encoded
  bool within_bound = true;
  Verdict verdict = Verdict::Reject;
};

struct ReductionTrace {
  std::vector<TraceEntry> entries;
  std::size_t violations() const;
};

using DegreeOracle = std::function<Verdict(const Graph&, const Graph&)>;

// Infeasible when a closure class exceeds k or a block breaks the degree bound.
Verdict stw_to_degree_iso(const Graph& g1, const Graph& g2, std::size_t k, const DegreeOracle& oracle,
                          ReductionTrace* trace = nullptr);

}  // namespace tdiso
