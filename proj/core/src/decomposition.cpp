#include "tdiso/decomposition.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "tdiso/error.hpp"

namespace tdiso {

namespace {

constexpr auto kUnset = std::numeric_limits<std::size_t>::max();

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

std::vector<std::vector<std::size_t>> tree_adjacency(std::size_t nodes, std::span<const TreeEdge> edges) {
  std::vector<std::vector<std::size_t>> adj(nodes);
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return adj;
}

bool induces_connected(const Graph& g, const VertexSet& bag) {
  if (bag.empty()) return true;
  std::vector<Vertex> stack{bag.front()};
  std::vector<Vertex> seen{bag.front()};
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : g.neighbors(v))
      if (std::binary_search(bag.begin(), bag.end(), w) && std::find(seen.begin(), seen.end(), w) == seen.end()) {
        seen.push_back(w);
        stack.push_back(w);
      }
  }
  return seen.size() == bag.size();
}

}  // namespace

std::size_t StrongTreeDecomposition::width() const noexcept {
  std::size_t w = 0;
  for (const auto& b : bags) w = std::max(w, b.size());
  return w;
}

std::size_t TreeDecomposition::width() const noexcept {
  std::size_t w = 0;
  for (const auto& b : bags) w = std::max(w, b.size());
  return w;
}

BagFamily::BagFamily(std::vector<VertexSet> sets) {
  for (auto& s : sets) s = make_vertex_set(std::move(s));
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  for (const auto& s : sets) width_ = std::max(width_, s.size());
  sets_ = std::move(sets);
}

bool BagFamily::contains(std::span<const Vertex> s) const {
  VertexSet key(s.begin(), s.end());
  return std::binary_search(sets_.begin(), sets_.end(), key);
}

BagFamily relabel(const BagFamily& f, std::span<const Vertex> perm) {
  std::vector<VertexSet> out;
  out.reserve(f.size());
  for (const auto& s : f.sets()) {
    VertexSet m;
    for (Vertex v : s) m.push_back(perm[v]);
    out.push_back(std::move(m));
  }
  return BagFamily(std::move(out));
}

// Depth of a vertex in any tree distance decomposition equals its distance
// from the root set, and a bag's neighbours one level up must share a bag.
// Those merges only flow towards the root, so levels are closed deepest first.
MinimalTdd minimal_tdd(const Graph& g, std::span<const Vertex> s) {
  if (s.empty()) throw Error(ErrorCode::EmptyRoot, "root set is empty");
  for (Vertex v : s)
    if (v >= g.order()) throw Error(ErrorCode::OutOfRange, "root vertex " + std::to_string(v));
  const auto n = g.order();
  const auto dist = distances_from(g, s);

  std::size_t depth = 0;
  bool unreachable = false;
  for (auto d : dist) {
    if (d == kUnset)
      unreachable = true;
    else
      depth = std::max(depth, d);
  }
  std::vector<std::vector<Vertex>> levels(depth + 1);
  for (Vertex v = 0; v < n; ++v)
    if (dist[v] != kUnset) levels[dist[v]].push_back(v);

  DisjointSets ds(n);
  std::vector<std::size_t> anchor(n, kUnset);
  for (std::size_t d = depth; d >= 1; --d) {
    for (Vertex v : levels[d])
      for (Vertex w : g.neighbors(v))
        if (dist[w] == d) ds.unite(v, w);
    if (d + 1 <= depth) {
      for (Vertex w : levels[d + 1]) {
        auto bag = ds.find(w);
        for (Vertex u : g.neighbors(w)) {
          if (dist[u] != d) continue;
          if (anchor[bag] == kUnset)
            anchor[bag] = u;
          else
            ds.unite(anchor[bag], u);
        }
      }
    }
  }

  MinimalTdd out;
  auto& dec = out.tdd.decomposition;
  std::vector<std::size_t> bag_of(n, kUnset);
  dec.bags.push_back(make_vertex_set({s.begin(), s.end()}));
  out.level.push_back(0);
  for (Vertex v : dec.bags[0]) bag_of[v] = 0;
  std::vector<std::size_t> index_of_rep(n, kUnset);
  for (std::size_t d = 1; d <= depth; ++d) {
    for (Vertex v : levels[d]) {
      auto rep = ds.find(v);
      if (index_of_rep[rep] == kUnset) {
        index_of_rep[rep] = dec.bags.size();
        dec.bags.emplace_back();
        out.level.push_back(d);
      }
      bag_of[v] = index_of_rep[rep];
      dec.bags[bag_of[v]].push_back(v);
    }
  }
  for (std::size_t b = 1; b < dec.bags.size(); ++b) {
    Vertex v = dec.bags[b].front();
    for (Vertex u : g.neighbors(v))
      if (dist[u] + 1 == dist[v]) {
        dec.tree.emplace_back(bag_of[u], b);
        break;
      }
  }
  out.tdd.root = 0;
  out.width = unreachable ? Width::infinite() : Width::of(dec.width());
  return out;
}

Width tdw_of_root(const Graph& g, std::span<const Vertex> s) { return minimal_tdd(g, s).width; }

bool is_tree(std::size_t nodes, std::span<const TreeEdge> edges) {
  if (nodes == 0) return edges.empty();
  if (edges.size() + 1 != nodes) return false;
  DisjointSets ds(nodes);
  for (auto [a, b] : edges) {
    if (a >= nodes || b >= nodes || !ds.unite(a, b)) return false;
  }
  return true;
}

bool validate_strong_td(const Graph& g, const StrongTreeDecomposition& d) {
  const auto n = g.order();
  std::vector<std::size_t> bag_of(n, kUnset);
  for (std::size_t i = 0; i < d.bags.size(); ++i) {
    if (d.bags[i].empty()) return false;
    for (Vertex v : d.bags[i]) {
      if (v >= n || bag_of[v] != kUnset) return false;
      bag_of[v] = i;
    }
  }
  for (auto b : bag_of)
    if (b == kUnset) return false;
  if (!is_tree(d.bags.size(), d.tree)) return false;
  auto adj = tree_adjacency(d.bags.size(), d.tree);
  for (auto [u, v] : g.edges()) {
    auto a = bag_of[u], b = bag_of[v];
    if (a == b) continue;
    if (std::find(adj[a].begin(), adj[a].end(), b) == adj[a].end()) return false;
  }
  return true;
}

bool validate_tdd(const Graph& g, const TreeDistanceDecomposition& d) {
  const auto& dec = d.decomposition;
  if (!validate_strong_td(g, dec)) return false;
  if (d.root >= dec.bags.size()) return false;
  auto adj = tree_adjacency(dec.bags.size(), dec.tree);
  std::vector<std::size_t> parent(dec.bags.size(), kUnset);
  std::vector<std::size_t> order{d.root};
  parent[d.root] = d.root;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (auto c : adj[order[i]])
      if (parent[c] == kUnset) {
        parent[c] = order[i];
        order.push_back(c);
      }
  for (std::size_t b = 0; b < dec.bags.size(); ++b) {
    if (b == d.root) continue;
    const auto& up = dec.bags[parent[b]];
    for (Vertex v : dec.bags[b]) {
      bool ok = false;
      for (Vertex w : g.neighbors(v))
        if (std::binary_search(up.begin(), up.end(), w)) {
          ok = true;
          break;
        }
      if (!ok) return false;
    }
  }
  return true;
}

bool validate_tree_decomposition(const Graph& g, const TreeDecomposition& d) {
  if (!is_tree(d.bags.size(), d.tree)) return false;
  const auto n = g.order();
  std::vector<std::vector<std::size_t>> holders(n);
  for (std::size_t i = 0; i < d.bags.size(); ++i)
    for (Vertex v : d.bags[i]) {
      if (v >= n) return false;
      holders[v].push_back(i);
    }
  for (Vertex v = 0; v < n; ++v)
    if (holders[v].empty()) return false;
  for (auto [u, v] : g.edges()) {
    bool shared = false;
    for (auto b : holders[u])
      if (std::binary_search(d.bags[b].begin(), d.bags[b].end(), v)) {
        shared = true;
        break;
      }
    if (!shared) return false;
  }
  // Bags holding v must form a subtree: count tree edges inside the holder set.
  for (Vertex v = 0; v < n; ++v) {
    std::size_t inner = 0;
    for (auto [a, b] : d.tree)
      if (std::binary_search(d.bags[a].begin(), d.bags[a].end(), v) &&
          std::binary_search(d.bags[b].begin(), d.bags[b].end(), v))
        ++inner;
    if (inner + 1 != holders[v].size()) return false;
  }
  return true;
}

bool validate_semi_smooth(const TreeDecomposition& d) {
  if (!is_tree(d.bags.size(), d.tree)) return false;
  for (auto [a, b] : d.tree) {
    const auto& x = d.bags[a];
    const auto& y = d.bags[b];
    VertexSet common;
    std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(common));
    if (common.size() + 1 < std::max(x.size(), y.size())) return false;
  }
  return true;
}

bool validate_connected_strong_td(const Graph& g, const StrongTreeDecomposition& d) {
  if (!validate_strong_td(g, d)) return false;
  return std::all_of(d.bags.begin(), d.bags.end(), [&](const VertexSet& b) { return induces_connected(g, b); });
}

BagFamily pairwise_union_family(const BagFamily& v) {
  std::vector<VertexSet> out;
  const auto& sets = v.sets();
  out.reserve(sets.size() * (sets.size() + 1) / 2);
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = i; j < sets.size(); ++j) {
      VertexSet u;
      std::set_union(sets[i].begin(), sets[i].end(), sets[j].begin(), sets[j].end(), std::back_inserter(u));
      out.push_back(std::move(u));
    }
  return BagFamily(std::move(out));
}

// Each tree edge B1-B2 becomes a path that first adds the vertices of B2 one at
// a time and then drops those of B1, so the middle bag B1 u B2 covers the
// edges between them.
TreeDecomposition strong_td_to_semismooth(const StrongTreeDecomposition& d) {
  TreeDecomposition out;
  out.bags = d.bags;
  for (auto [a, b] : d.tree) {
    VertexSet cur = d.bags[a];
    std::size_t prev = a;
    auto push = [&](VertexSet bag) {
      out.bags.push_back(std::move(bag));
      out.tree.emplace_back(prev, out.bags.size() - 1);
      prev = out.bags.size() - 1;
    };
    for (Vertex v : d.bags[b]) {
      cur.insert(std::upper_bound(cur.begin(), cur.end(), v), v);
      push(cur);
    }
    const auto& drop = d.bags[a];
    for (std::size_t i = 0; i + 1 < drop.size(); ++i) {
      cur.erase(std::lower_bound(cur.begin(), cur.end(), drop[i]));
      push(cur);
    }
    out.tree.emplace_back(prev, b);
  }
  return out;
}

}  // namespace tdiso
