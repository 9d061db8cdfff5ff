#include "tdiso/solvers.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <string>

#include "tdiso/connectivity.hpp"
#include "tdiso/error.hpp"

namespace tdiso {

namespace {

// Individualization-refinement search for a bijection between two graphs that
// share one color space. Every candidate leaf is handed to `accept`.
class IrSearch {
 public:
  using Check = std::function<bool(const std::vector<Vertex>&)>;

  IrSearch(const Graph& a, const Graph& b, std::vector<std::uint32_t> initial,
           const std::vector<std::vector<Vertex>>* mates, Check accept)
      : a_(a), b_(b), na_(a.order()), initial_(std::move(initial)), mates_(mates), accept_(std::move(accept)) {}

  std::optional<std::vector<Vertex>> run() {
    if (a_.order() != b_.order()) return std::nullopt;
    if (search(initial_)) return found_;
    return std::nullopt;
  }

 private:
  template <typename F>
  void for_neighbors(std::size_t x, F&& f) const {
    if (x < na_) {
      for (Vertex w : a_.neighbors(static_cast<Vertex>(x))) f(w);
    } else {
      for (Vertex w : b_.neighbors(static_cast<Vertex>(x - na_))) f(w + na_);
    }
  }

  std::size_t refine(std::vector<std::uint32_t>& colors) const {
    const auto total = colors.size();
    std::size_t classes = std::set<std::uint32_t>(colors.begin(), colors.end()).size();
    std::vector<std::vector<std::uint32_t>> keys(total);
    while (true) {
      for (std::size_t x = 0; x < total; ++x) {
        auto& key = keys[x];
        key.assign(1, colors[x]);
        std::size_t mark = key.size();
        for_neighbors(x, [&](std::size_t w) { key.push_back(colors[w]); });
        std::sort(key.begin() + static_cast<std::ptrdiff_t>(mark), key.end());
        if (mates_) {
          key.push_back(std::numeric_limits<std::uint32_t>::max());
          mark = key.size();
          for (Vertex m : (*mates_)[x]) key.push_back(colors[m]);
          std::sort(key.begin() + static_cast<std::ptrdiff_t>(mark), key.end());
        }
      }
      std::map<std::vector<std::uint32_t>, std::uint32_t> ids;
      for (const auto& k : keys) ids.emplace(k, 0);
      std::uint32_t next = 0;
      for (auto& [k, id] : ids) id = next++;
      for (std::size_t x = 0; x < total; ++x) colors[x] = ids.at(keys[x]);
      if (ids.size() == classes) return classes;
      classes = ids.size();
    }
  }

  bool search(std::vector<std::uint32_t> colors) {
    refine(colors);
    std::map<std::uint32_t, std::pair<std::vector<Vertex>, std::vector<Vertex>>> cells;
    for (std::size_t x = 0; x < colors.size(); ++x) {
      auto& cell = cells[colors[x]];
      (x < na_ ? cell.first : cell.second).push_back(static_cast<Vertex>(x < na_ ? x : x - na_));
    }
    const std::pair<std::vector<Vertex>, std::vector<Vertex>>* target = nullptr;
    for (const auto& [c, cell] : cells) {
      if (cell.first.size() != cell.second.size()) return false;
      if (cell.first.size() > 1 && (!target || cell.first.size() < target->first.size())) target = &cell;
    }
    if (!target) {
      std::vector<Vertex> map(na_);
      for (const auto& [c, cell] : cells) map[cell.first.front()] = cell.second.front();
      if (!accept_(map)) return false;
      found_ = std::move(map);
      return true;
    }
    const std::uint32_t fresh = static_cast<std::uint32_t>(cells.size());
    const Vertex v = target->first.front();
    const auto candidates = target->second;
    for (Vertex u : candidates) {
      auto next = colors;
      next[v] = fresh;
      next[u + na_] = fresh;
      if (search(std::move(next))) return true;
    }
    return false;
  }

  const Graph& a_;
  const Graph& b_;
  std::size_t na_;
  std::vector<std::uint32_t> initial_;
  const std::vector<std::vector<Vertex>>* mates_;
  Check accept_;
  std::vector<Vertex> found_;
};

bool preserves_edges(const Graph& a, const Graph& b, const std::vector<Vertex>& map) {
  if (a.size() != b.size()) return false;
  for (auto [u, v] : a.edges())
    if (!b.adjacent(map[u], map[v])) return false;
  return true;
}

}  // namespace

IsoResult brute_force_iso(const Graph& g1, const Graph& g2, std::size_t cap) {
  if (g1.order() > cap || g2.order() > cap)
    throw Error(ErrorCode::TooLarge, "brute force is capped at " + std::to_string(cap) + " vertices");
  if (g1.order() != g2.order() || g1.size() != g2.size()) return {};
  IrSearch search(g1, g2, std::vector<std::uint32_t>(g1.order() + g2.order(), 0), nullptr,
                  [&](const std::vector<Vertex>& m) { return preserves_edges(g1, g2, m); });
  auto w = search.run();
  if (!w) return {};
  return {Verdict::Accept, std::move(w)};
}

IsoResult brute_force_iso_colored(const ColoredGraph& g1, const ColoredGraph& g2, std::size_t cap) {
  if (g1.graph.order() > cap || g2.graph.order() > cap)
    throw Error(ErrorCode::TooLarge, "colored brute force is capped at " + std::to_string(cap) + " vertices");
  if (!same_invariants(g1, g2)) return {};
  const auto n1 = g1.graph.order();

  // Initial colors: class size plus the (color, position) pairs of colored orderings.
  std::vector<std::vector<std::uint64_t>> keys;
  std::vector<std::vector<Vertex>> mates;
  for (const ColoredGraph* g : {&g1, &g2}) {
    const auto offset = g == &g1 ? 0 : n1;
    std::vector<std::vector<std::uint64_t>> local(g->graph.order());
    for (Vertex v = 0; v < g->graph.order(); ++v) {
      local[v].push_back(g->partition.members(g->partition.class_of(v)).size());
      std::vector<Vertex> m;
      for (Vertex w : g->partition.members(g->partition.class_of(v)))
        if (w != v) m.push_back(static_cast<Vertex>(w + offset));
      mates.push_back(std::move(m));
    }
    std::vector<std::vector<std::uint64_t>> tags(g->graph.order());
    for (const auto& [ord, c] : g->coloring.entries())
      for (std::size_t i = 0; i < ord.size(); ++i) tags[ord[i]].push_back(static_cast<std::uint64_t>(c) << 8 | i);
    for (Vertex v = 0; v < g->graph.order(); ++v) {
      std::sort(tags[v].begin(), tags[v].end());
      local[v].insert(local[v].end(), tags[v].begin(), tags[v].end());
      keys.push_back(std::move(local[v]));
    }
  }
  std::map<std::vector<std::uint64_t>, std::uint32_t> ids;
  for (const auto& k : keys) ids.emplace(k, 0);
  std::uint32_t next = 0;
  for (auto& [k, id] : ids) id = next++;
  std::vector<std::uint32_t> initial;
  for (const auto& k : keys) initial.push_back(ids.at(k));

  auto accept = [&](const std::vector<Vertex>& m) {
    if (!preserves_edges(g1.graph, g2.graph, m)) return false;
    for (const auto& cls : g1.partition.classes()) {
      VertexSet image;
      for (Vertex v : cls) image.push_back(m[v]);
      std::sort(image.begin(), image.end());
      if (image != g2.partition.members(g2.partition.class_of(image.front()))) return false;
    }
    if (g1.coloring.entries().size() != g2.coloring.entries().size()) return false;
    for (const auto& [ord, c] : g1.coloring.entries()) {
      std::vector<Vertex> image;
      for (Vertex v : ord) image.push_back(m[v]);
      if (g2.coloring.get(image) != c) return false;
    }
    return true;
  };
  IrSearch search(g1.graph, g2.graph, std::move(initial), &mates, accept);
  auto w = search.run();
  if (!w) return {};
  return {Verdict::Accept, std::move(w)};
}

std::vector<VertexSet> connected_subsets(const Graph& h, std::size_t k, std::size_t cap) {
  std::set<VertexSet> seen;
  std::vector<VertexSet> frontier;
  for (Vertex v = 0; v < h.order() && k > 0; ++v) {
    seen.insert({v});
    frontier.push_back({v});
  }
  while (!frontier.empty()) {
    std::vector<VertexSet> next;
    for (const auto& s : frontier) {
      if (s.size() >= k) continue;
      for (Vertex u : neighborhood_of_set(h, s)) {
        VertexSet t = s;
        t.insert(std::lower_bound(t.begin(), t.end(), u), u);
        if (seen.insert(t).second) {
          if (seen.size() > cap)
            throw Error(ErrorCode::FamilyTooLarge, "more than " + std::to_string(cap) + " candidate bags");
          next.push_back(std::move(t));
        }
      }
    }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

namespace {

// Vertices joined when in the same class or in adjacent classes.
Graph projection_graph(const Graph& g, const EquivalencePartition& r) {
  auto q = quotient_graph(g, r);
  std::vector<Edge> es;
  for (Vertex u = 0; u < g.order(); ++u)
    for (Vertex v = u + 1; v < g.order(); ++v) {
      auto a = q.projection[u], b = q.projection[v];
      if (a == b || q.graph.adjacent(a, b)) es.emplace_back(u, v);
    }
  return Graph::from_edges(g.order(), es);
}

// Vertices joined when equivalent or within distance c in g.
Graph proximity_graph(const Graph& g, const EquivalencePartition& r, std::size_t c) {
  std::vector<Edge> es;
  for (Vertex u = 0; u < g.order(); ++u) {
    const Vertex src[1] = {u};
    auto d = distances_from(g, src);
    for (Vertex v = u + 1; v < g.order(); ++v)
      if (r.class_of(u) == r.class_of(v) || d[v] <= c) es.emplace_back(u, v);
  }
  return Graph::from_edges(g.order(), es);
}

bool classes_within(const EquivalencePartition& r, std::size_t k) {
  return r.class_count() == 0 || r.largest_class() <= k;
}

template <typename Family>
Verdict block_pipeline(const Graph& g1, const Graph& g2, std::size_t k, const WlOptions& opt, Family family) {
  if (k == 0) throw Error(ErrorCode::BadParams, "k must be at least 1");
  if (g1.order() != g2.order() || g1.size() != g2.size()) return Verdict::Reject;
  auto r1 = kcon_closure(g1, 2 * k);
  auto r2 = kcon_closure(g2, 2 * k);
  if (!classes_within(r1, k) || !classes_within(r2, k)) return Verdict::Infeasible;
  BlockOracle oracle = [&](const ColoredGraph& a, const ColoredGraph& b) {
    return compare_with_strong_capture(a, family(a), b, family(b), opt);
  };
  return iso_via_blocks(ColoredGraph{g1, std::move(r1), {}}, ColoredGraph{g2, std::move(r2), {}}, oracle);
}

}  // namespace

BagFamily capture_bags_connected_quotient(const ColoredGraph& g, std::size_t k, std::size_t cap) {
  return BagFamily(connected_subsets(projection_graph(g.graph, g.partition), k, cap));
}

BagFamily capture_bags_connected_quotient(const Graph& g, std::size_t k, std::size_t cap) {
  return BagFamily(connected_subsets(projection_graph(g, kcon_closure(g, 2 * k)), k, cap));
}

Verdict cstw_iso(const Graph& g1, const Graph& g2, std::size_t k, const WlOptions& opt) {
  return block_pipeline(g1, g2, k, opt, [k](const ColoredGraph& b) { return capture_bags_connected_quotient(b, k); });
}

namespace {

// Each simple cycle once, as a vertex sequence starting at its least vertex.
template <typename F>
void for_each_cycle(const Graph& g, std::size_t cap, F&& visit) {
  if (g.order() > cap) throw Error(ErrorCode::TooLarge, "cycle enumeration is capped at " + std::to_string(cap));
  const auto n = g.order();
  std::vector<Vertex> path;
  std::vector<char> on(n, 0);
  std::function<void(Vertex)> extend = [&](Vertex v) {
    for (Vertex w : g.neighbors(v)) {
      if (w == path.front() && path.size() >= 3 && path[1] < path.back()) visit(path);
      if (w <= path.front() || on[w]) continue;
      on[w] = 1;
      path.push_back(w);
      extend(w);
      path.pop_back();
      on[w] = 0;
    }
  };
  for (Vertex s = 0; s < n; ++s) {
    path.assign(1, s);
    on[s] = 1;
    extend(s);
    on[s] = 0;
  }
}

}  // namespace

std::size_t geodesic_cycle_length(const Graph& g, std::size_t cap) {
  if (g.order() > cap) throw Error(ErrorCode::TooLarge, "cycle enumeration is capped at " + std::to_string(cap));
  std::vector<std::vector<std::size_t>> dist;
  for (Vertex v = 0; v < g.order(); ++v) {
    const Vertex src[1] = {v};
    dist.push_back(distances_from(g, src));
  }
  std::size_t best = 0;
  for_each_cycle(g, cap, [&](const std::vector<Vertex>& c) {
    const auto len = c.size();
    if (len <= best) return;
    for (std::size_t i = 0; i < len; ++i)
      for (std::size_t j = i + 1; j < len; ++j)
        if (dist[c[i]][c[j]] != std::min(j - i, len - (j - i))) return;
    best = len;
  });
  return best;
}

std::size_t chordality(const Graph& g, std::size_t cap) {
  std::size_t best = 0;
  for_each_cycle(g, cap, [&](const std::vector<Vertex>& c) {
    if (c.size() <= best) return;
    std::size_t inner = 0;
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = i + 1; j < c.size(); ++j)
        if (g.adjacent(c[i], c[j])) ++inner;
    if (inner == c.size()) best = c.size();
  });
  return best;
}

BagFamily capture_bags_geodesic(const ColoredGraph& block, std::size_t k, std::size_t c, std::size_t cap) {
  if (c == 0) throw Error(ErrorCode::BadParams, "c must be at least 1");
  return BagFamily(connected_subsets(proximity_graph(block.graph, block.partition, c), k, cap));
}

BagFamily capture_bags_geodesic(const Graph& g, std::size_t k, std::size_t c, std::size_t cap) {
  if (c == 0) throw Error(ErrorCode::BadParams, "c must be at least 1");
  ColoredGraph whole{g, kcon_closure(g, 2 * k), {}};
  std::vector<VertexSet> sets;
  const auto forest = blocks_relative(whole.graph, whole.partition);
  for (const auto& b : forest.blocks) {
    std::vector<Vertex> original;
    auto piece = induced_colored(whole, b, &original);
    const auto family = capture_bags_geodesic(piece, k, c, cap);
    for (const auto& s : family.sets()) {
      VertexSet lifted;
      for (Vertex v : s) lifted.push_back(original[v]);
      sets.push_back(make_vertex_set(std::move(lifted)));
    }
  }
  return BagFamily(std::move(sets));
}

Verdict geodesic_stw_iso(const Graph& g1, const Graph& g2, std::size_t k, std::optional<std::size_t> c,
                         const WlOptions& opt) {
  if (g1.order() != g2.order() || g1.size() != g2.size()) return Verdict::Reject;
  if (!c) {
    const auto c1 = geodesic_cycle_length(g1, std::max(kCycleCap, g1.order()));
    const auto c2 = geodesic_cycle_length(g2, std::max(kCycleCap, g2.order()));
    if (c1 != c2) return Verdict::Reject;
    c = c1;
  }
  const std::size_t reach = std::max<std::size_t>(*c, 1);
  return block_pipeline(g1, g2, k, opt,
                        [k, reach](const ColoredGraph& b) { return capture_bags_geodesic(b, k, reach); });
}

SuppliedResult iso_with_supplied_bags(const Graph& g1, const BagFamily& v1, const Graph& g2, const BagFamily& v2,
                                      const SuppliedOptions& opt) {
  SuppliedResult out;
  out.conditional = !opt.vouch;
  if (v1.width() != v2.width())
    throw Error(ErrorCode::WidthMismatch, "families have widths " + std::to_string(v1.width()) + " and " +
                                              std::to_string(v2.width()));
  if (g1.order() != g2.order() || g1.size() != g2.size()) return out;
  if (v1.empty() || v2.empty()) {
    if (g1.order() == 0 && g2.order() == 0) out.verdict = Verdict::Accept;
    return out;
  }
  out.verdict = opt.capture == CaptureKind::Strong ? compare_with_strong_capture(g1, v1, g2, v2, opt.wl)
                                                   : compare_graphs(g1, v1, g2, v2, 3, opt.wl);
  return out;
}

}  // namespace tdiso
