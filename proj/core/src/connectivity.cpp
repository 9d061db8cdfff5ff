#include "tdiso/connectivity.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "tdiso/error.hpp"

namespace tdiso {

namespace {

constexpr int kUnbounded = std::numeric_limits<int>::max() / 4;

// Unit-capacity augmenting paths on the split graph (Dinic phases).
class FlowNetwork {
 public:
  explicit FlowNetwork(std::size_t nodes) : head_(nodes, -1) {}

  void add_arc(std::size_t a, std::size_t b, int cap) {
    arcs_.push_back({b, cap, head_[a]});
    head_[a] = static_cast<int>(arcs_.size() - 1);
    arcs_.push_back({a, 0, head_[b]});
    head_[b] = static_cast<int>(arcs_.size() - 1);
  }

  std::size_t max_flow(std::size_t s, std::size_t t, std::size_t limit) {
    std::size_t flow = 0;
    while (flow < limit && levels(s, t)) {
      cursor_ = head_;
      while (flow < limit) {
        int pushed = push(s, t, kUnbounded);
        if (pushed == 0) break;
        flow += static_cast<std::size_t>(pushed);
      }
    }
    return flow;
  }

 private:
  struct Arc {
    std::size_t to;
    int cap;
    int next;
  };

  bool levels(std::size_t s, std::size_t t) {
    level_.assign(head_.size(), -1);
    std::vector<std::size_t> queue{s};
    level_[s] = 0;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      auto x = queue[i];
      for (int a = head_[x]; a != -1; a = arcs_[a].next)
        if (arcs_[a].cap > 0 && level_[arcs_[a].to] < 0) {
          level_[arcs_[a].to] = level_[x] + 1;
          queue.push_back(arcs_[a].to);
        }
    }
    return level_[t] >= 0;
  }

  int push(std::size_t x, std::size_t t, int f) {
    if (x == t) return f;
    for (int& a = cursor_[x]; a != -1; a = arcs_[a].next) {
      auto& arc = arcs_[a];
      if (arc.cap <= 0 || level_[arc.to] != level_[x] + 1) continue;
      int got = push(arc.to, t, std::min(f, arc.cap));
      if (got > 0) {
        arc.cap -= got;
        arcs_[a ^ 1].cap += got;
        return got;
      }
    }
    return 0;
  }

  std::vector<int> head_;
  std::vector<int> cursor_;
  std::vector<int> level_;
  std::vector<Arc> arcs_;
};

std::size_t in_node(Vertex v) { return 2 * static_cast<std::size_t>(v); }
std::size_t out_node(Vertex v) { return 2 * static_cast<std::size_t>(v) + 1; }

std::size_t pair_paths(const Graph& g, Vertex u, Vertex v, std::size_t limit) {
  const auto n = g.order();
  FlowNetwork net(2 * n);
  for (Vertex x = 0; x < n; ++x) net.add_arc(in_node(x), out_node(x), (x == u || x == v) ? kUnbounded : 1);
  for (auto [a, b] : g.edges()) {
    net.add_arc(out_node(a), in_node(b), 1);
    net.add_arc(out_node(b), in_node(a), 1);
  }
  return net.max_flow(out_node(u), in_node(v), limit);
}

}  // namespace

std::size_t max_disjoint_paths(const Graph& g, Vertex u, Vertex v) {
  if (u >= g.order() || v >= g.order()) throw Error(ErrorCode::OutOfRange, "vertex outside the graph");
  if (u == v) throw Error(ErrorCode::SameVertex, "endpoints coincide");
  return pair_paths(g, u, v, std::numeric_limits<std::size_t>::max());
}

std::size_t max_disjoint_paths_to_set(const Graph& g, Vertex v, std::span<const Vertex> s) {
  const auto n = g.order();
  std::vector<char> target(n, 0);
  for (Vertex x : s) target[x] = 1;
  if (target[v]) throw Error(ErrorCode::SameVertex, "source lies in the target set");
  const std::size_t sink = 2 * n;
  FlowNetwork net(2 * n + 1);
  for (Vertex x = 0; x < n; ++x) {
    if (target[x])
      net.add_arc(in_node(x), sink, kUnbounded);
    else
      net.add_arc(in_node(x), out_node(x), x == v ? kUnbounded : 1);
  }
  for (auto [a, b] : g.edges()) {
    if (!target[a]) net.add_arc(out_node(a), in_node(b), 1);
    if (!target[b]) net.add_arc(out_node(b), in_node(a), 1);
  }
  return net.max_flow(out_node(v), sink, std::numeric_limits<std::size_t>::max());
}

std::vector<Edge> kcon_pairs(const Graph& g, std::size_t threshold) {
  std::vector<Edge> out;
  const auto n = g.order();
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) {
      if (std::min(g.degree(u), g.degree(v)) < threshold) continue;
      if (pair_paths(g, u, v, threshold) >= threshold) out.emplace_back(u, v);
    }
  return out;
}

EquivalencePartition kcon_closure(const Graph& g, std::size_t threshold) {
  const auto n = g.order();
  std::vector<Vertex> parent(n);
  std::iota(parent.begin(), parent.end(), Vertex{0});
  auto find = [&](Vertex x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [u, v] : kcon_pairs(g, threshold)) {
    auto a = find(u), b = find(v);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<VertexSet> classes(n);
  for (Vertex v = 0; v < n; ++v) classes[find(v)].push_back(v);
  classes.erase(std::remove_if(classes.begin(), classes.end(), [](const VertexSet& c) { return c.empty(); }),
                classes.end());
  return EquivalencePartition(n, std::move(classes));
}

}  // namespace tdiso
