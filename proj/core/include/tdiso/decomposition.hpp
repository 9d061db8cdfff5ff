#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tdiso/graph.hpp"

namespace tdiso {

// Positive bag size, or infinite when no decomposition of the requested kind exists.
class Width {
 public:
  constexpr Width() = default;
  static constexpr Width of(std::size_t w) { return Width(w, false); }
  static constexpr Width infinite() { return Width(0, true); }

  constexpr bool is_infinite() const noexcept { return inf_; }
  constexpr std::size_t value() const noexcept { return w_; }
  std::string to_string() const { return inf_ ? "inf" : std::to_string(w_); }

  friend constexpr bool operator==(Width a, Width b) { return a.inf_ == b.inf_ && (a.inf_ || a.w_ == b.w_); }
  friend constexpr std::strong_ordering operator<=>(Width a, Width b) {
    if (a.inf_ || b.inf_) return a.inf_ <=> b.inf_;
    return a.w_ <=> b.w_;
  }
  friend constexpr bool operator<=(Width a, std::size_t k) { return !a.inf_ && a.w_ <= k; }

 private:
  constexpr Width(std::size_t w, bool inf) : w_(w), inf_(inf) {}
  std::size_t w_ = 0;
  bool inf_ = false;
};

using TreeEdge = std::pair<std::size_t, std::size_t>;

struct StrongTreeDecomposition {
  std::vector<VertexSet> bags;
  std::vector<TreeEdge> tree;

  std::size_t width() const noexcept;
};

struct TreeDistanceDecomposition {
  StrongTreeDecomposition decomposition;
  std::size_t root = 0;
};

struct TreeDecomposition {
  std::vector<VertexSet> bags;
  std::vector<TreeEdge> tree;

  std::size_t width() const noexcept;
};

// Deduplicated family of vertex sets, kept in canonical (sorted) order.
class BagFamily {
 public:
  BagFamily() = default;
  explicit BagFamily(std::vector<VertexSet> sets);

  const std::vector<VertexSet>& sets() const noexcept { return sets_; }
  std::size_t size() const noexcept { return sets_.size(); }
  bool empty() const noexcept { return sets_.empty(); }
  std::size_t width() const noexcept { return width_; }
  bool contains(std::span<const Vertex> s) const;

  friend bool operator==(const BagFamily&, const BagFamily&) = default;

 private:
  std::vector<VertexSet> sets_;
  std::size_t width_ = 0;
};

BagFamily relabel(const BagFamily& f, std::span<const Vertex> perm);

struct MinimalTdd {
  TreeDistanceDecomposition tdd;
  Width width;
  // Distance from the root set per bag.
  std::vector<std::size_t> level;
};

// Finest tree distance decomposition rooted at s. Throws EmptyRoot.
MinimalTdd minimal_tdd(const Graph& g, std::span<const Vertex> s);
Width tdw_of_root(const Graph& g, std::span<const Vertex> s);

bool is_tree(std::size_t nodes, std::span<const TreeEdge> edges);
bool validate_strong_td(const Graph& g, const StrongTreeDecomposition& d);
bool validate_tdd(const Graph& g, const TreeDistanceDecomposition& d);
bool validate_tree_decomposition(const Graph& g, const TreeDecomposition& d);
bool validate_semi_smooth(const TreeDecomposition& d);
bool validate_connected_strong_td(const Graph& g, const StrongTreeDecomposition& d);

BagFamily pairwise_union_family(const BagFamily& v);
TreeDecomposition strong_td_to_semismooth(const StrongTreeDecomposition& d);

}  // namespace tdiso
