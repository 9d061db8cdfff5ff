#include "corpus.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "tdiso/families.hpp"

namespace tdiso::selftest {

namespace {

Graph disjoint_union(const Graph& a, const Graph& b) {
  auto es = a.edges();
  const auto shift = static_cast<Vertex>(a.order());
  for (auto [u, v] : b.edges()) es.emplace_back(u + shift, v + shift);
  return Graph::from_edges(a.order() + b.order(), es);
}

Graph star(std::size_t leaves) {
  std::vector<Edge> es;
  for (Vertex v = 1; v <= leaves; ++v) es.emplace_back(0, v);
  return Graph::from_edges(leaves + 1, es);
}

Graph wheel(std::size_t rim) {
  auto es = cycle(rim).edges();
  for (auto& [u, v] : es) {
    ++u;
    ++v;
  }
  for (Vertex v = 1; v <= rim; ++v) es.emplace_back(0, v);
  return Graph::from_edges(rim + 1, es);
}

}  // namespace

std::vector<CorpusGraph> desk_corpus() {
  std::vector<CorpusGraph> out;
  auto add = [&](std::string name, Graph g) { out.push_back({std::move(name), std::move(g)}); };
  for (std::size_t n = 2; n <= 9; ++n) add("P" + std::to_string(n), path(n));
  for (std::size_t n = 3; n <= 9; ++n) add("C" + std::to_string(n), cycle(n));
  for (std::size_t n = 4; n <= 5; ++n) add("K" + std::to_string(n), complete(n));
  add("2C3", disjoint_union(cycle(3), cycle(3)));
  add("C4+P3", disjoint_union(cycle(4), path(3)));
  add("K1,5", star(5));
  add("W5", wheel(5));
  for (std::size_t p = 2; p <= 6; ++p) {
    auto g = kp_path(2, p);
    add(g.name, g.graph);
  }
  for (std::size_t p = 1; p <= 3; ++p) {
    auto g = kp_path(3, p);
    add(g.name, g.graph);
  }
  for (auto [k, p] : {std::pair<std::size_t, std::size_t>{1, 3}, {1, 5}, {2, 1}, {2, 2}, {3, 1}}) {
    auto g = kp_comb(k, p);
    add(g.name, g.graph);
  }
  std::uint64_t seed = 1;
  for (std::size_t n = 5; n <= 9; ++n)
    for (std::size_t extra = 0; extra <= 2; ++extra) {
      add("R" + std::to_string(n) + "_" + std::to_string(n - 1 + extra) + "#" + std::to_string(seed),
          random_graph(n, n - 1 + extra, seed));
      ++seed;
    }
  return out;
}

bool is_forest(const Graph& g) { return g.size() + connected_components(g).size() == g.order(); }

bool treewidth_at_most_two(const Graph& g) {
  std::vector<std::set<Vertex>> adj(g.order());
  for (auto [u, v] : g.edges()) {
    adj[u].insert(v);
    adj[v].insert(u);
  }
  std::vector<char> alive(g.order(), 1);
  bool changed = true;
  while (changed) {
    changed = false;
    for (Vertex v = 0; v < g.order(); ++v) {
      if (!alive[v] || adj[v].size() > 2) continue;
      std::vector<Vertex> nb(adj[v].begin(), adj[v].end());
      for (Vertex u : nb) adj[u].erase(v);
      if (nb.size() == 2) {
        adj[nb[0]].insert(nb[1]);
        adj[nb[1]].insert(nb[0]);
      }
      adj[v].clear();
      alive[v] = 0;
      changed = true;
    }
  }
  return std::none_of(alive.begin(), alive.end(), [](char a) { return a != 0; });
}

Profile profile(const Graph& g) {
  Profile p;
  p.stw = brute_stw(g);
  p.cstw = brute_cstw(g);
  if (g.order() > 0 && is_connected(g)) {
    auto w = brute_ctdw(g).width;
    if (!w.is_infinite()) p.ctdw = w.value();
  }
  p.forest = is_forest(g);
  p.treewidth_two = treewidth_at_most_two(g);
  return p;
}

Graph perturb(const Graph& g, std::uint64_t seed) {
  auto es = g.edges();
  const auto n = g.order();
  std::vector<Edge> non;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (!g.adjacent(u, v)) non.emplace_back(u, v);
  if (es.empty() || non.empty()) return g;
  std::mt19937_64 rng(seed);
  es.erase(es.begin() + static_cast<std::ptrdiff_t>(rng() % es.size()));
  es.push_back(non[rng() % non.size()]);
  return Graph::from_edges(n, es);
}

}  // namespace tdiso::selftest
