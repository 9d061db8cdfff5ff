#include "tdiso/root_enum.hpp"

#include <algorithm>
#include <set>

#include "tdiso/connectivity.hpp"
#include "tdiso/error.hpp"

namespace tdiso {

VertexSet saturate(const Graph& g, VertexSet s, std::size_t paths) {
  const auto n = g.order();
  std::vector<char> in(n, 0);
  for (Vertex v : s) in[v] = 1;
  bool grown = true;
  while (grown) {
    grown = false;
    for (Vertex v = 0; v < n; ++v) {
      if (in[v] || g.degree(v) < paths) continue;
      if (max_disjoint_paths_to_set(g, v, s) >= paths) {
        in[v] = 1;
        s.insert(std::lower_bound(s.begin(), s.end(), v), v);
        grown = true;
        break;
      }
    }
  }
  return s;
}

namespace {

class RootSearch {
 public:
  RootSearch(const Graph& g, std::size_t k) : g_(g), k_(k), branch_cap_(2 * k * k * k + k) {}

  void explore(VertexSet s) {
    s = saturate(g_, std::move(s), 2 * k_);
    if (!visited_.insert(s).second) return;
    if (tdw_of_root(g_, s) <= k_) {
      found_.insert(s);
      return;
    }
    if (s.size() >= k_) return;

    // Components of G - S' whose own distance decomposition is too wide.
    const auto n = g_.order();
    std::vector<char> in(n, 0);
    for (Vertex v : s) in[v] = 1;
    std::vector<Vertex> rest;
    for (Vertex v = 0; v < n; ++v)
      if (!in[v]) rest.push_back(v);
    auto sub = induced_subgraph(g_, rest);
    std::vector<VertexSet> choices;
    for (const auto& comp : connected_components(sub.graph)) {
      VertexSet part = s;
      for (Vertex local : comp) part.push_back(sub.original[local]);
      std::sort(part.begin(), part.end());
      auto piece = induced_subgraph(g_, part);
      VertexSet root;
      for (Vertex i = 0; i < piece.original.size(); ++i)
        if (in[piece.original[i]]) root.push_back(i);
      if (tdw_of_root(piece.graph, root) <= k_) continue;
      VertexSet frontier;
      for (Vertex local : comp) {
        Vertex v = sub.original[local];
        for (Vertex u : g_.neighbors(v))
          if (in[u]) {
            frontier.push_back(v);
            break;
          }
      }
      std::sort(frontier.begin(), frontier.end());
      choices.push_back(std::move(frontier));
    }
    if (choices.empty() || choices.size() + s.size() > k_) return;
    for (const auto& c : choices)
      if (c.size() > branch_cap_ || c.empty()) return;
    for (const auto& c : choices) widest_ = std::max(widest_, c.size());

    std::vector<std::size_t> pick(choices.size(), 0);
    while (true) {
      VertexSet next = s;
      for (std::size_t i = 0; i < choices.size(); ++i) next.push_back(choices[i][pick[i]]);
      explore(make_vertex_set(std::move(next)));
      std::size_t i = 0;
      while (i < pick.size() && ++pick[i] == choices[i].size()) pick[i++] = 0;
      if (i == pick.size()) break;
    }
  }

  RootSetFamily result() const {
    RootSetFamily out;
    out.sets.assign(found_.begin(), found_.end());
    out.k = k_;
    out.widest_branch = widest_;
    out.explored = visited_.size();
    return out;
  }

 private:
  const Graph& g_;
  std::size_t k_;
  std::size_t branch_cap_;
  std::size_t widest_ = 0;
  std::set<VertexSet> visited_;
  std::set<VertexSet> found_;
};

}  // namespace

RootSetFamily enumerate_root_sets(const Graph& g, std::size_t k) {
  if (k == 0) throw Error(ErrorCode::BadParams, "k must be at least 1");
  if (!is_connected(g)) throw Error(ErrorCode::NotConnected, "root enumeration needs a connected graph");
  RootSearch search(g, k);
  for (Vertex v = 0; v < g.order(); ++v) search.explore({v});
  return search.result();
}

BagFamily bags_from_roots(const Graph& g, const RootSetFamily& roots, std::size_t k) {
  std::vector<VertexSet> bags;
  for (const auto& s : roots.sets) {
    auto m = minimal_tdd(g, s);
    if (!(m.width <= k)) continue;
    for (auto& b : m.tdd.decomposition.bags) bags.push_back(std::move(b));
  }
  return BagFamily(std::move(bags));
}

Verdict ctdw_iso(const Graph& g1, const Graph& g2, std::size_t k, const WlOptions& opt) {
  const bool c1 = is_connected(g1), c2 = is_connected(g2);
  if (!c1 && !c2) throw Error(ErrorCode::NotConnected, "both graphs are disconnected");
  if (c1 != c2) return Verdict::Reject;
  if (g1.order() != g2.order() || g1.size() != g2.size()) return Verdict::Reject;
  auto b1 = bags_from_roots(g1, enumerate_root_sets(g1, k), k);
  auto b2 = bags_from_roots(g2, enumerate_root_sets(g2, k), k);
  if (b1.empty() && b2.empty()) return Verdict::Infeasible;
  if (b1.empty() || b2.empty()) return Verdict::Reject;
  return compare_with_strong_capture(g1, b1, g2, b2, opt);
}

}  // namespace tdiso
