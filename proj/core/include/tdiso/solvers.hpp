#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "tdiso/block_reduce.hpp"
#include "tdiso/decomposition.hpp"
#include "tdiso/graph.hpp"
#include "tdiso/wl.hpp"

namespace tdiso {

inline constexpr std::size_t kBruteCap = 10;
inline constexpr std::size_t kBruteColoredCap = 8;
inline constexpr std::size_t kCycleCap = 14;
inline constexpr std::size_t kFamilyCap = 1'000'000;

struct IsoResult {
  Verdict verdict = Verdict::Reject;
  // Image of each vertex of the first graph, on Accept.
  std::optional<std::vector<Vertex>> witness;
};

// Exact search by individualization and refinement. Throws TooLarge above cap.
IsoResult brute_force_iso(const Graph& g1, const Graph& g2, std::size_t cap = kBruteCap);
// Isomorphisms must map classes onto classes and colored orderings onto orderings of the same color.
IsoResult brute_force_iso_colored(const ColoredGraph& g1, const ColoredGraph& g2,
                                  std::size_t cap = kBruteColoredCap);

// Connected vertex sets of size <= k in h. Throws FamilyTooLarge.
std::vector<VertexSet> connected_subsets(const Graph& h, std::size_t k, std::size_t cap = kFamilyCap);

// Sets of size <= k projecting to connected subgraphs of the quotient by the
// closure of the 2k-connectivity relation (or by the given partition).
BagFamily capture_bags_connected_quotient(const Graph& g, std::size_t k, std::size_t cap = kFamilyCap);
BagFamily capture_bags_connected_quotient(const ColoredGraph& g, std::size_t k, std::size_t cap = kFamilyCap);

// Infeasible when a closure class exceeds k.
Verdict cstw_iso(const Graph& g1, const Graph& g2, std::size_t k, const WlOptions& opt = {});

// Longest geodesic cycle, 0 for forests. Throws TooLarge above cap.
std::size_t geodesic_cycle_length(const Graph& g, std::size_t cap = kCycleCap);
// Longest induced cycle, 0 for forests. Throws TooLarge above cap.
std::size_t chordality(const Graph& g, std::size_t cap = kCycleCap);

// Per block relative to the closure: sets of size <= k that are connected once
// equivalent vertices and vertices within block distance c are joined.
BagFamily capture_bags_geodesic(const Graph& g, std::size_t k, std::size_t c, std::size_t cap = kFamilyCap);
BagFamily capture_bags_geodesic(const ColoredGraph& block, std::size_t k, std::size_t c,
                                std::size_t cap = kFamilyCap);

// Without c, the longest geodesic cycle of g1 is used (Reject when g2's differs).
Verdict geodesic_stw_iso(const Graph& g1, const Graph& g2, std::size_t k, std::optional<std::size_t> c = {},
                         const WlOptions& opt = {});

enum class CaptureKind {
  // The families hold the bags of strong tree decompositions.
  Strong,
  // The families hold every bag of a semi-smooth tree decomposition.
  SemiSmooth,
};

struct SuppliedOptions {
  CaptureKind capture = CaptureKind::Strong;
  bool vouch = false;
  WlOptions wl;
};

struct SuppliedResult {
  Verdict verdict = Verdict::Reject;
  bool conditional = true;
};

// Throws WidthMismatch when the families differ in width.
SuppliedResult iso_with_supplied_bags(const Graph& g1, const BagFamily& v1, const Graph& g2, const BagFamily& v2,
                                      const SuppliedOptions& opt = {});

}  // namespace tdiso
