#include "tdiso/block_reduce.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "tdiso/connectivity.hpp"
#include "tdiso/error.hpp"

namespace tdiso {

namespace {

// Biconnected components (as vertex lists) of a simple graph. Isolated vertices
// form their own component.
std::vector<std::vector<Vertex>> biconnected_components(const Graph& g) {
  const auto n = g.order();
  std::vector<std::size_t> disc(n, 0), low(n, 0);
  std::size_t timer = 0;
  std::vector<Edge> stack;
  std::vector<std::vector<Vertex>> out;

  struct Frame {
    Vertex v;
    Vertex parent;
    std::size_t next;
  };
  for (Vertex s = 0; s < n; ++s) {
    if (disc[s]) continue;
    if (g.degree(s) == 0) {
      disc[s] = ++timer;
      out.push_back({s});
      continue;
    }
    std::vector<Frame> frames{{s, s, 0}};
    disc[s] = low[s] = ++timer;
    while (!frames.empty()) {
      auto& f = frames.back();
      auto nb = g.neighbors(f.v);
      if (f.next < nb.size()) {
        Vertex w = nb[f.next++];
        if (w == f.parent) continue;
        if (!disc[w]) {
          stack.emplace_back(f.v, w);
          disc[w] = low[w] = ++timer;
          frames.push_back({w, f.v, 0});
        } else if (disc[w] < disc[f.v]) {
          stack.emplace_back(f.v, w);
          low[f.v] = std::min(low[f.v], disc[w]);
        }
        continue;
      }
      const Vertex v = f.v, p = f.parent;
      frames.pop_back();
      if (frames.empty()) break;
      low[p] = std::min(low[p], low[v]);
      if (low[v] >= disc[p]) {
        std::vector<Vertex> comp;
        while (true) {
          auto e = stack.back();
          stack.pop_back();
          comp.push_back(e.first);
          comp.push_back(e.second);
          if (e.first == p && e.second == v) break;
        }
        out.push_back(make_vertex_set(std::move(comp)));
      }
    }
  }
  return out;
}

std::vector<std::vector<Vertex>> permutations_of(const VertexSet& members) {
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> p(members.begin(), members.end());
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::vector<Vertex> complement(std::size_t n, const std::vector<char>& drop) {
  std::vector<Vertex> keep;
  for (Vertex v = 0; v < n; ++v)
    if (!drop[v]) keep.push_back(v);
  return keep;
}

struct Query {
  std::size_t side;
  std::size_t leaf;
  std::size_t order_index;
  ColoredGraph graph;
};

class BlockReduction {
 public:
  BlockReduction(const BlockOracle& oracle, BlockStats& stats) : oracle_(oracle), stats_(stats) {}

  Verdict ask(const ColoredGraph& a, const ColoredGraph& b) {
    ++stats_.oracle_calls;
    return oracle_(a, b);
  }

  Verdict components(const ColoredGraph& g1, const ColoredGraph& g2) {
    auto c1 = split(g1), c2 = split(g2);
    if (c1.size() != c2.size()) return Verdict::Reject;
    std::vector<char> used(c2.size(), 0);
    for (const auto& a : c1) {
      bool matched = false;
      for (std::size_t j = 0; j < c2.size() && !matched; ++j) {
        if (used[j] || !same_invariants(a, c2[j])) continue;
        auto v = connected(a, c2[j]);
        if (v == Verdict::Infeasible) return v;
        if (v == Verdict::Accept) used[j] = matched = true;
      }
      if (!matched) return Verdict::Reject;
    }
    return Verdict::Accept;
  }

 private:
  static std::vector<ColoredGraph> split(const ColoredGraph& g) {
    auto q = quotient_graph(g.graph, g.partition);
    std::vector<ColoredGraph> out;
    for (const auto& comp : connected_components(q.graph)) {
      VertexSet vs;
      for (auto c : comp) vs.insert(vs.end(), g.partition.members(c).begin(), g.partition.members(c).end());
      std::sort(vs.begin(), vs.end());
      out.push_back(induced_colored(g, vs));
    }
    return out;
  }

  Verdict connected(const ColoredGraph& a, const ColoredGraph& b) {
    auto fa = blocks_relative(a.graph, a.partition);
    auto fb = blocks_relative(b.graph, b.partition);
    if (fa.blocks.size() != fb.blocks.size()) return Verdict::Reject;
    if (fa.blocks.size() == 1) return ask(a, b);
    const auto& root = fa.blocks.front();
    for (const auto& candidate : fb.blocks) {
      if (candidate.size() != root.size()) continue;
      auto v = peel(a, root, b, candidate);
      if (v != Verdict::Reject) return v;
    }
    return Verdict::Reject;
  }

  Verdict peel(ColoredGraph a, VertexSet root_a, ColoredGraph b, VertexSet root_b) {
    ColoredGraph h[2] = {std::move(a), std::move(b)};
    VertexSet root[2] = {std::move(root_a), std::move(root_b)};
    while (true) {
      ++stats_.rounds;
      BlockForest f[2] = {blocks_relative(h[0].graph, h[0].partition), blocks_relative(h[1].graph, h[1].partition)};
      const bool single0 = f[0].blocks.size() == 1, single1 = f[1].blocks.size() == 1;
      if (single0 && single1) return ask(h[0], h[1]);
      if (single0 != single1) return Verdict::Reject;

      // Leaves: non-root blocks with one incident cut class.
      std::vector<std::size_t> leaves[2];
      for (int s = 0; s < 2; ++s)
        for (std::size_t i = 0; i < f[s].blocks.size(); ++i)
          if (f[s].block_cuts[i].size() == 1 && f[s].blocks[i] != root[s]) leaves[s].push_back(i);
      if (leaves[0].size() != leaves[1].size() || leaves[0].empty()) return Verdict::Reject;

      // One query per (leaf, ordering of its cut class).
      std::map<std::vector<std::uint64_t>, Color> codes;
      std::vector<Query> queries;
      for (int s = 0; s < 2; ++s)
        for (std::size_t li = 0; li < leaves[s].size(); ++li) {
          const auto b_idx = leaves[s][li];
          const auto cls = f[s].cut_classes[f[s].block_cuts[b_idx].front()];
          const auto orders = permutations_of(h[s].partition.members(cls));
          for (std::size_t oi = 0; oi < orders.size(); ++oi)
            queries.push_back({static_cast<std::size_t>(s), li, oi,
                               make_query(h[s], f[s].blocks[b_idx], cls, orders[oi], codes)});
        }

      std::vector<std::size_t> reps;
      std::vector<std::size_t> chi(queries.size());
      for (std::size_t q = 0; q < queries.size(); ++q) {
        bool found = false;
        for (std::size_t r = 0; r < reps.size() && !found; ++r) {
          const auto& rep = queries[reps[r]];
          if (!same_invariants(queries[q].graph, rep.graph)) continue;
          auto v = ask(queries[q].graph, rep.graph);
          if (v == Verdict::Infeasible) return v;
          if (v == Verdict::Accept) {
            chi[q] = r;
            found = true;
          }
        }
        if (!found) {
          chi[q] = reps.size();
          reps.push_back(q);
        }
      }

      // New colors for the orderings of cut classes carrying leaves.
      Color base = std::max(h[0].coloring.max_color(), h[1].coloring.max_color()) + 1;
      std::map<std::vector<std::uint64_t>, Color> fresh;
      for (int s = 0; s < 2; ++s) {
        std::map<std::size_t, std::vector<std::size_t>> leaves_at;  // class -> leaf positions
        for (std::size_t li = 0; li < leaves[s].size(); ++li)
          leaves_at[f[s].cut_classes[f[s].block_cuts[leaves[s][li]].front()]].push_back(li);
        std::map<std::pair<std::size_t, std::size_t>, std::size_t> chi_of;  // (leaf, ordering) -> chi
        for (std::size_t q = 0; q < queries.size(); ++q)
          if (queries[q].side == static_cast<std::size_t>(s)) chi_of[{queries[q].leaf, queries[q].order_index}] = chi[q];

        TupleColoring recolored = h[s].coloring;
        std::vector<char> drop(h[s].graph.order(), 0);
        for (const auto& [cls, ls] : leaves_at) {
          const auto orders = permutations_of(h[s].partition.members(cls));
          for (std::size_t oi = 0; oi < orders.size(); ++oi) {
            std::vector<std::uint64_t> key{h[s].coloring.get(orders[oi])};
            std::vector<std::uint64_t> ms;
            for (auto li : ls) ms.push_back(chi_of.at({li, oi}));
            std::sort(ms.begin(), ms.end());
            key.insert(key.end(), ms.begin(), ms.end());
            auto [it, added] = fresh.try_emplace(std::move(key), static_cast<Color>(base + fresh.size()));
            recolored.set(orders[oi], it->second);
          }
          for (auto li : ls)
            for (Vertex v : f[s].blocks[leaves[s][li]])
              if (h[s].partition.class_of(v) != cls) drop[v] = 1;
        }
        ColoredGraph marked{h[s].graph, h[s].partition, std::move(recolored)};
        std::vector<Vertex> original;
        h[s] = induced_colored(marked, complement(marked.graph.order(), drop), &original);
        std::vector<Vertex> index(marked.graph.order(), 0);
        for (Vertex i = 0; i < original.size(); ++i) index[original[i]] = i;
        for (auto& v : root[s]) v = index[v];
      }
      if (!same_invariants(h[0], h[1])) return Verdict::Reject;
    }
  }

  // Leaf block with the orderings of its cut class tagged relative to sigma.
  static ColoredGraph make_query(const ColoredGraph& h, const VertexSet& block, std::size_t cls,
                                 const std::vector<Vertex>& sigma, std::map<std::vector<std::uint64_t>, Color>& codes) {
    std::vector<Vertex> original;
    auto q = induced_colored(h, block, &original);
    std::vector<Vertex> index(h.graph.order(), 0);
    for (Vertex i = 0; i < original.size(); ++i) index[original[i]] = i;
    const auto& members = h.partition.members(cls);
    TupleColoring tc;
    for (const auto& [ord, c] : q.coloring.entries())
      if (h.partition.class_of(original[ord.front()]) != cls) tc.set(ord, 2 * c);
    for (const auto& tau : permutations_of(members)) {
      std::vector<std::uint64_t> key{h.coloring.get(tau), members.size()};
      for (Vertex v : tau) key.push_back(static_cast<std::uint64_t>(std::find(sigma.begin(), sigma.end(), v) - sigma.begin()));
      auto [it, added] = codes.try_emplace(std::move(key), static_cast<Color>(codes.size()));
      std::vector<Vertex> local;
      for (Vertex v : tau) local.push_back(index[v]);
      tc.set(std::move(local), 2 * it->second + 1);
    }
    q.coloring = std::move(tc);
    return q;
  }

  const BlockOracle& oracle_;
  BlockStats& stats_;
};

}  // namespace

BlockForest blocks_relative(const Graph& g, const EquivalencePartition& r) {
  auto q = quotient_graph(g, r);
  auto comps = biconnected_components(q.graph);
  std::vector<std::size_t> count(q.graph.order(), 0);
  for (const auto& c : comps)
    for (auto x : c) ++count[x];

  std::vector<std::pair<VertexSet, std::vector<Vertex>>> lifted;
  for (const auto& c : comps) {
    VertexSet vs;
    for (auto x : c) vs.insert(vs.end(), r.members(x).begin(), r.members(x).end());
    std::sort(vs.begin(), vs.end());
    lifted.emplace_back(std::move(vs), c);
  }
  std::sort(lifted.begin(), lifted.end());

  BlockForest out;
  std::vector<std::size_t> cut_pos(q.graph.order(), 0);
  for (std::size_t x = 0; x < q.graph.order(); ++x)
    if (count[x] > 1) {
      cut_pos[x] = out.cut_classes.size();
      out.cut_classes.push_back(x);
    }
  for (std::size_t b = 0; b < lifted.size(); ++b) {
    out.blocks.push_back(lifted[b].first);
    out.block_cuts.emplace_back();
    for (auto x : lifted[b].second)
      if (count[x] > 1) {
        out.block_cuts.back().push_back(cut_pos[x]);
        out.tree.emplace_back(b, cut_pos[x]);
      }
  }
  return out;
}

bool same_invariants(const ColoredGraph& a, const ColoredGraph& b) {
  if (a.graph.order() != b.graph.order() || a.graph.size() != b.graph.size()) return false;
  if (a.partition.class_count() != b.partition.class_count()) return false;
  auto degrees = [](const Graph& g) {
    std::vector<std::size_t> d;
    for (Vertex v = 0; v < g.order(); ++v) d.push_back(g.degree(v));
    std::sort(d.begin(), d.end());
    return d;
  };
  if (degrees(a.graph) != degrees(b.graph)) return false;
  auto sizes = [](const EquivalencePartition& p) {
    std::vector<std::size_t> s;
    for (const auto& c : p.classes()) s.push_back(c.size());
    std::sort(s.begin(), s.end());
    return s;
  };
  if (sizes(a.partition) != sizes(b.partition)) return false;
  auto colors = [](const TupleColoring& tc) {
    std::vector<Color> c;
    for (const auto& [ord, col] : tc.entries()) c.push_back(col);
    std::sort(c.begin(), c.end());
    return c;
  };
  return colors(a.coloring) == colors(b.coloring);
}

Verdict iso_via_blocks(const ColoredGraph& g1, const ColoredGraph& g2, const BlockOracle& oracle, BlockStats* stats) {
  BlockStats local;
  BlockStats& s = stats ? *stats : local;
  if (!same_invariants(g1, g2)) return Verdict::Reject;
  if (g1.graph.order() == 0) return Verdict::Accept;
  return BlockReduction(oracle, s).components(g1, g2);
}

GadgetPalette::GadgetPalette(const ColoredGraph& a, const ColoredGraph& b) {
  for (const auto* g : {&a, &b})
    for (const auto& [ord, c] : g->coloring.entries()) colors_.push_back(c);
  std::sort(colors_.begin(), colors_.end());
  colors_.erase(std::unique(colors_.begin(), colors_.end()), colors_.end());
}

std::size_t GadgetPalette::code(Color c) const {
  if (c == tdiso::kUncolored) return kUncoloredCode;
  auto it = std::lower_bound(colors_.begin(), colors_.end(), c);
  if (it == colors_.end() || *it != c) throw Error(ErrorCode::BadParams, "color missing from the palette");
  return kUncoloredCode + 1 + static_cast<std::size_t>(it - colors_.begin());
}

Graph gadget_encode(const ColoredGraph& g, const GadgetPalette& palette, std::size_t max_class) {
  const auto n = g.graph.order();
  if (g.partition.class_count() > 0 && g.partition.largest_class() > max_class)
    throw Error(ErrorCode::ClassTooLarge, "class larger than " + std::to_string(max_class));
  std::vector<Edge> edges = g.graph.edges();
  std::vector<std::size_t> code(n, GadgetPalette::kOriginal);
  auto add_vertex = [&](std::size_t c) {
    code.push_back(c);
    return static_cast<Vertex>(code.size() - 1);
  };
  for (const auto& members : g.partition.classes()) {
    for (const auto& sigma : permutations_of(members)) {
      const Color c = g.coloring.get(sigma);
      if (members.size() == 1 && c == kUncolored) continue;
      Vertex prev = add_vertex(palette.code(c));
      for (Vertex v : sigma) {
        Vertex cur = add_vertex(GadgetPalette::kPath);
        edges.emplace_back(prev, cur);
        edges.emplace_back(cur, v);
        prev = cur;
      }
    }
  }
  const auto real = code.size();
  for (std::size_t v = 0; v < real; ++v)
    for (std::size_t len = 3 * code[v] - 2; len <= 3 * code[v]; ++len) {
      Vertex prev = static_cast<Vertex>(v);
      for (std::size_t i = 0; i < len; ++i) {
        Vertex cur = static_cast<Vertex>(code.size());
        code.push_back(0);
        edges.emplace_back(prev, cur);
        prev = cur;
      }
    }
  for (auto& e : edges)
    if (e.first > e.second) std::swap(e.first, e.second);
  return Graph::from_edges(code.size(), edges);
}

std::pair<Graph, Graph> gadget_encode_pair(const ColoredGraph& a, const ColoredGraph& b, std::size_t max_class) {
  GadgetPalette palette(a, b);
  return {gadget_encode(a, palette, max_class), gadget_encode(b, palette, max_class)};
}

std::size_t ReductionTrace::violations() const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [](const TraceEntry& e) { return !e.within_bound; }));
}

Verdict stw_to_degree_iso(const Graph& g1, const Graph& g2, std::size_t k, const DegreeOracle& oracle,
                          ReductionTrace* trace) {
  if (k == 0) throw Error(ErrorCode::BadParams, "k must be at least 1");
  if (g1.order() != g2.order() || g1.size() != g2.size()) return Verdict::Reject;
  auto r1 = kcon_closure(g1, 2 * k);
  auto r2 = kcon_closure(g2, 2 * k);
  for (const auto* r : {&r1, &r2})
    if (r->class_count() > 0 && r->largest_class() > k) return Verdict::Infeasible;

  BlockStats stats;
  ReductionTrace local;
  ReductionTrace& log = trace ? *trace : local;
  const bool bounded = k >= 2;
  BlockOracle block = [&](const ColoredGraph& a, const ColoredGraph& b) {
    TraceEntry e;
    e.round = stats.rounds;
    e.block_sizes = {a.graph.order(), b.graph.order()};
    e.max_degree = std::max(a.graph.max_degree(), b.graph.max_degree());
    e.within_bound = !bounded || e.max_degree <= block_degree_bound(k);
    if (!e.within_bound) {
      e.verdict = Verdict::Infeasible;
    } else {
      auto [ea, eb] = gadget_encode_pair(a, b, k);
      e.encoded_degree = std::max(ea.max_degree(), eb.max_degree());
      e.verdict = oracle(ea, eb);
    }
    log.entries.push_back(e);
    return e.verdict;
  };
  return iso_via_blocks(ColoredGraph{g1, std::move(r1), {}}, ColoredGraph{g2, std::move(r2), {}}, block, &stats);
}

}  // namespace tdiso
