#include "tdiso/families.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <unordered_map>

#include "tdiso/error.hpp"

namespace tdiso {

LabeledGraph kp_path(std::size_t k, std::size_t p) {
  if (k < 2 || p < 1) throw Error(ErrorCode::BadParams, "kp_path needs k >= 2 and p >= 1");
  std::vector<Edge> es;
  for (std::size_t i = 0; i + 1 < k; ++i)
    for (std::size_t j = 0; j < p; ++j) {
      auto w = static_cast<Vertex>(k + i * p + j);
      es.emplace_back(static_cast<Vertex>(i), w);
      es.emplace_back(static_cast<Vertex>(i + 1), w);
    }
  LabeledGraph out{Graph::from_edges(k + (k - 1) * p, es), {}, "(" + std::to_string(k) + "," + std::to_string(p) + ")-path"};
  for (std::size_t i = 0; i < k; ++i) out.black.push_back(static_cast<Vertex>(i));
  return out;
}

LabeledGraph kp_comb(std::size_t k, std::size_t p) {
  if (k < 1 || p < 1) throw Error(ErrorCode::BadParams, "kp_comb needs k >= 1 and p >= 1");
  std::vector<Edge> es;
  for (std::size_t i = 0; i + 1 < k; ++i) es.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(i + 1));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < p; ++j) {
      auto w = static_cast<Vertex>(2 * k + i * p + j);
      es.emplace_back(static_cast<Vertex>(i), w);
      es.emplace_back(static_cast<Vertex>(k + i), w);
    }
  LabeledGraph out{Graph::from_edges(k * (p + 2), es), {}, "(" + std::to_string(k) + "," + std::to_string(p) + ")-comb"};
  for (std::size_t i = 0; i < 2 * k; ++i) out.black.push_back(static_cast<Vertex>(i));
  return out;
}

Graph cycle(std::size_t n) {
  if (n < 3) throw Error(ErrorCode::BadParams, "a cycle needs at least 3 vertices");
  std::vector<Edge> es;
  for (std::size_t i = 0; i < n; ++i) es.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % n));
  return Graph::from_edges(n, es);
}

Graph path(std::size_t n) {
  std::vector<Edge> es;
  for (std::size_t i = 0; i + 1 < n; ++i) es.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(i + 1));
  return Graph::from_edges(n, es);
}

Graph complete(std::size_t n) {
  std::vector<Edge> es;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) es.emplace_back(u, v);
  return Graph::from_edges(n, es);
}

namespace {

// Uniform in [0, bound) by rejection, independent of the standard library's distributions.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  while (true) {
    auto x = rng();
    if (x < limit) return x % bound;
  }
}

}  // namespace

// Partial Fisher-Yates over the lexicographic pair indices; only swapped slots are stored.
Graph random_graph(std::size_t n, std::size_t m, std::uint64_t seed) {
  const std::size_t pairs = n < 2 ? 0 : n * (n - 1) / 2;
  if (m > pairs) throw Error(ErrorCode::BadParams, "more edges requested than pairs available");
  auto pair_at = [n](std::size_t idx) {
    // Row u starts at u*(2n-u-1)/2.
    std::size_t lo = 0, hi = n - 1;
    while (hi - lo > 1) {
      const std::size_t mid = (lo + hi) / 2;
      if (mid * (2 * n - mid - 1) / 2 <= idx)
        lo = mid;
      else
        hi = mid;
    }
    const std::size_t start = lo * (2 * n - lo - 1) / 2;
    return Edge(static_cast<Vertex>(lo), static_cast<Vertex>(lo + 1 + idx - start));
  };
  std::unordered_map<std::size_t, std::size_t> moved;
  auto slot = [&](std::size_t i) {
    auto it = moved.find(i);
    return it == moved.end() ? i : it->second;
  };
  std::mt19937_64 rng(seed);
  std::vector<Edge> picked;
  picked.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j = i + uniform_below(rng, pairs - i);
    const std::size_t a = slot(i), b = slot(j);
    moved[j] = a;
    picked.push_back(pair_at(b));
  }
  return Graph::from_edges(n, picked);
}

std::vector<Vertex> random_permutation(std::size_t n, std::uint64_t seed) {
  std::vector<Vertex> p(n);
  std::iota(p.begin(), p.end(), Vertex{0});
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i + 1 < n; ++i) std::swap(p[i], p[i + uniform_below(rng, n - i)]);
  return p;
}

namespace {

void record(RootedWidth& best, Width w, VertexSet s) {
  if (w < best.width) {
    best.width = w;
    best.roots.clear();
  }
  if (w == best.width && !w.is_infinite()) best.roots.push_back(std::move(s));
}

}  // namespace

RootedWidth brute_ctdw(const Graph& g, std::size_t cap) {
  const auto n = g.order();
  if (n > cap) throw Error(ErrorCode::TooLarge, "root search is capped at " + std::to_string(cap) + " vertices");
  RootedWidth best{Width::infinite(), {}};
  // A root of size s gives width at least s, so sizes beyond the best width are useless.
  for (std::size_t s = 1; s <= n && Width::of(s) <= best.width; ++s) {
    std::vector<Vertex> pick(s);
    std::iota(pick.begin(), pick.end(), Vertex{0});
    while (true) {
      auto sub = induced_subgraph(g, pick);
      if (is_connected(sub.graph)) record(best, tdw_of_root(g, pick), pick);
      std::size_t i = s;
      while (i > 0 && pick[i - 1] == n - s + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < s; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  std::sort(best.roots.begin(), best.roots.end());
  return best;
}

RootedWidth brute_rtdw(const Graph& g) {
  RootedWidth best{Width::infinite(), {}};
  for (Vertex v = 0; v < g.order(); ++v) {
    const Vertex s[1] = {v};
    record(best, tdw_of_root(g, s), {v});
  }
  return best;
}

namespace {

class PartitionSearch {
 public:
  PartitionSearch(const Graph& g, std::size_t w, bool connected,
                  const std::function<bool(const std::vector<VertexSet>&)>& visit)
      : g_(g), w_(w), connected_(connected), visit_(visit), block_(g.order(), 0) {}

  void run() { place(0); }

 private:
  // Restricted growth: vertex v joins an existing bag or opens a new one.
  bool place(Vertex v) {
    if (v == g_.order()) return check();
    for (std::size_t b = 0; b <= bags_.size(); ++b) {
      if (b == bags_.size()) bags_.emplace_back();
      if (bags_[b].size() < w_) {
        bags_[b].push_back(v);
        block_[v] = b;
        if (!place(v + 1)) return false;
        bags_[b].pop_back();
      }
      if (bags_[b].empty()) {
        bags_.pop_back();
        break;
      }
    }
    return true;
  }

  bool check() {
    const auto m = bags_.size();
    std::vector<std::size_t> parent(m);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    std::vector<std::pair<std::size_t, std::size_t>> links;
    for (auto [u, v] : g_.edges()) {
      auto a = block_[u], b = block_[v];
      if (a != b) links.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(links.begin(), links.end());
    links.erase(std::unique(links.begin(), links.end()), links.end());
    for (auto [a, b] : links) {
      auto x = find(a), y = find(b);
      if (x == y) return true;  // cycle in the quotient
      parent[x] = y;
    }
    if (connected_)
      for (const auto& bag : bags_)
        if (!is_connected(induced_subgraph(g_, bag).graph)) return true;
    return visit_(bags_);
  }

  const Graph& g_;
  std::size_t w_;
  bool connected_;
  const std::function<bool(const std::vector<VertexSet>&)>& visit_;
  std::vector<VertexSet> bags_;
  std::vector<std::size_t> block_;
};

std::size_t brute_width(const Graph& g, bool connected, std::size_t cap) {
  if (g.order() > cap) throw Error(ErrorCode::TooLarge, "partition search is capped at " + std::to_string(cap));
  for (std::size_t w = 1; w <= g.order(); ++w) {
    bool found = false;
    for_each_strong_partition(g, w, connected, [&](const std::vector<VertexSet>&) {
      found = true;
      return false;
    }, cap);
    if (found) return w;
  }
  return 0;
}

}  // namespace

void for_each_strong_partition(const Graph& g, std::size_t w, bool connected,
                               const std::function<bool(const std::vector<VertexSet>&)>& visit, std::size_t cap) {
  if (g.order() > cap) throw Error(ErrorCode::TooLarge, "partition search is capped at " + std::to_string(cap));
  if (w == 0) return;
  PartitionSearch(g, w, connected, visit).run();
}

std::size_t brute_stw(const Graph& g, std::size_t cap) { return brute_width(g, false, cap); }
std::size_t brute_cstw(const Graph& g, std::size_t cap) { return brute_width(g, true, cap); }

StrongTreeDecomposition partition_to_strong_td(const Graph& g, const std::vector<VertexSet>& bags) {
  StrongTreeDecomposition d;
  d.bags = bags;
  std::vector<std::size_t> block(g.order(), 0);
  for (std::size_t b = 0; b < bags.size(); ++b)
    for (Vertex v : bags[b]) block[v] = b;
  std::vector<std::size_t> parent(bags.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto link = [&](std::size_t a, std::size_t b) {
    auto x = find(a), y = find(b);
    if (x == y) return;
    parent[x] = y;
    d.tree.emplace_back(std::min(a, b), std::max(a, b));
  };
  for (auto [u, v] : g.edges())
    if (block[u] != block[v]) link(block[u], block[v]);
  for (std::size_t b = 1; b < bags.size(); ++b) link(0, b);
  return d;
}

}  // namespace tdiso
