#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "tdiso/decomposition.hpp"
#include "tdiso/graph.hpp"

namespace tdiso {

inline constexpr Color kBottom = 0;
inline constexpr std::size_t kDefaultTupleCap = 10'000'000;

enum class Verdict { Accept, Reject, Infeasible };

const char* to_string(Verdict v) noexcept;

// Interns color descriptors as integers starting at 1 and hands out unused
// colors. Shared by every graph taking part in one comparison.
class ColorTable {
 public:
  Color intern(std::span<const std::uint64_t> descriptor);
  // A color no descriptor has received.
  Color fresh() noexcept { return ++last_; }
  std::size_t size() const noexcept { return last_; }

 private:
  struct Hash {
    std::size_t operator()(const std::vector<std::uint64_t>& v) const noexcept;
  };
  std::unordered_map<std::vector<std::uint64_t>, Color, Hash> table_;
  Color last_ = 0;
};

// The tuples of V^k whose first `lead` entries form a set of the family.
// Stored as (lead tuple) x (free tail in V^(k-lead)), in mixed radix.
class TupleUniverse {
 public:
  static constexpr std::uint32_t kNone = 0xFFFFFFFFu;

  TupleUniverse(std::size_t n, const BagFamily& family, std::size_t dimension,
                std::size_t cap = kDefaultTupleCap);

  // Size of the universe without materializing it.
  static double count(std::size_t n, const BagFamily& family, std::size_t dimension);

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t dimension() const noexcept { return k_; }
  std::size_t lead() const noexcept { return lead_; }
  std::size_t size() const noexcept { return heads_ * tail_; }

  Vertex entry(std::uint32_t t, std::size_t j) const;
  std::vector<Vertex> tuple(std::uint32_t t) const;
  // Index of the tuple with entry j replaced by x, or kNone when it leaves the universe.
  std::uint32_t substitute(std::uint32_t t, std::size_t j, Vertex x) const;
  std::uint32_t find(std::span<const Vertex> tuple) const;

  // Mixed-radix access: t = head * tail_size() + rest.
  std::size_t tail_size() const noexcept { return tail_; }
  std::size_t radix(std::size_t j) const { return radix_[j]; }
  Vertex head_entry(std::size_t h, std::size_t j) const { return head_entries_[h * lead_ + j]; }
  std::uint32_t head_substitute(std::size_t h, std::size_t j, Vertex x) const {
    return head_subst_[(h * lead_ + j) * n_ + x];
  }

 private:
  std::size_t n_ = 0, k_ = 0, lead_ = 0;
  std::size_t heads_ = 0, tail_ = 1;
  std::vector<Vertex> head_entries_;
  std::vector<std::uint32_t> head_subst_;  // heads_ * lead_ * n_
  std::vector<std::size_t> radix_;         // n^(k-1-j) for tail positions
  std::unordered_map<std::uint64_t, std::uint32_t> head_index_;
  std::uint64_t head_key(std::span<const Vertex> head) const;
};

// Colors of the tuples of one universe; tuples outside it are implicitly kBottom.
using WLColoring = std::vector<Color>;

WLColoring initial_coloring(const ColoredGraph& g, const TupleUniverse& u, ColorTable& table);
WLColoring initial_coloring(const Graph& g, const TupleUniverse& u, ColorTable& table);
WLColoring refine_round(const TupleUniverse& u, const WLColoring& coloring, ColorTable& table);
// Fixed point of refine_round.
WLColoring naive_stable(const TupleUniverse& u, WLColoring coloring, ColorTable& table);
// Splitter-queue refinement.
WLColoring stable_refinement(const TupleUniverse& u, const WLColoring& initial, ColorTable& table);
// Several universes refined together; tuples never mix across universes.
std::vector<WLColoring> stable_refinement(std::span<const TupleUniverse* const> universes,
                                          std::vector<WLColoring> initial, ColorTable& table);

// Canonical form of the partition induced by a coloring (first-occurrence renaming).
std::vector<std::uint32_t> partition_of(const WLColoring& coloring);

struct WlOptions {
  std::size_t tuple_cap = kDefaultTupleCap;
};

// Both families must be of equal width (otherwise Reject); dimension is width + extra_dims.
Verdict compare_graphs(const ColoredGraph& g1, const BagFamily& v1, const ColoredGraph& g2, const BagFamily& v2,
                       std::size_t extra_dims, const WlOptions& opt = {});
Verdict compare_graphs(const Graph& g1, const BagFamily& v1, const Graph& g2, const BagFamily& v2,
                       std::size_t extra_dims, const WlOptions& opt = {});

// Pairwise unions, then dimension 2w+3 for the original width w.
Verdict compare_with_strong_capture(const ColoredGraph& g1, const BagFamily& v1, const ColoredGraph& g2,
                                    const BagFamily& v2, const WlOptions& opt = {});
Verdict compare_with_strong_capture(const Graph& g1, const BagFamily& v1, const Graph& g2, const BagFamily& v2,
                                    const WlOptions& opt = {});

}  // namespace tdiso
