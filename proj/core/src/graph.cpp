#include "tdiso/graph.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <string>

#include "tdiso/error.hpp"

namespace tdiso {

namespace {
constexpr std::size_t kMatrixLimit = 4096;
}

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::InvalidPartition: return "InvalidPartition";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DuplicateClassMember: return "DuplicateClassMember";
    case ErrorCode::PermutationMismatch: return "PermutationMismatch";
    case ErrorCode::SameVertex: return "SameVertex";
    case ErrorCode::EmptyRoot: return "EmptyRoot";
    case ErrorCode::NotConnected: return "NotConnected";
    case ErrorCode::WidthMismatch: return "WidthMismatch";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::FamilyTooLarge: return "FamilyTooLarge";
    case ErrorCode::TupleCapExceeded: return "TupleCapExceeded";
    case ErrorCode::ClassTooLarge: return "ClassTooLarge";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::Infeasible: return "Infeasible";
  }
  return "Unknown";
}

VertexSet make_vertex_set(std::vector<Vertex> vs) {
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

Graph::Graph(std::size_t n) : adj_(n) {
  if (n <= kMatrixLimit) {
    words_ = (n + 63) / 64;
    bits_.assign(n * words_, 0);
  }
}

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  Graph g(n);
  for (auto [u, v] : edges) {
    if (u >= n || v >= n)
      throw Error(ErrorCode::OutOfRange, "edge {" + std::to_string(u) + "," + std::to_string(v) +
                                             "} outside [0," + std::to_string(n) + ")");
    if (u == v) throw Error(ErrorCode::SelfLoop, "vertex " + std::to_string(u));
    g.adj_[u].push_back(v);
    g.adj_[v].push_back(u);
  }
  for (auto& a : g.adj_) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    g.m_ += a.size();
  }
  g.m_ /= 2;
  if (g.words_ != 0) {
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v : g.adj_[u]) g.bits_[u * g.words_ + v / 64] |= std::uint64_t{1} << (v % 64);
  }
  return g;
}

Graph build_graph(std::size_t n, std::span<const Edge> edges) { return Graph::from_edges(n, edges); }

std::size_t Graph::max_degree() const noexcept {
  std::size_t d = 0;
  for (const auto& a : adj_) d = std::max(d, a.size());
  return d;
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  if (words_ != 0) return (bits_[u * words_ + v / 64] >> (v % 64)) & 1U;
  return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(m_);
  for (Vertex u = 0; u < adj_.size(); ++u)
    for (Vertex v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> s) {
  std::vector<Vertex> original(s.begin(), s.end());
  std::vector<std::uint32_t> index(g.order(), std::numeric_limits<std::uint32_t>::max());
  for (std::size_t i = 0; i < original.size(); ++i) index[original[i]] = static_cast<std::uint32_t>(i);
  std::vector<Edge> es;
  for (std::size_t i = 0; i < original.size(); ++i)
    for (Vertex w : g.neighbors(original[i])) {
      auto j = index[w];
      if (j != std::numeric_limits<std::uint32_t>::max() && i < j)
        es.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
    }
  return {Graph::from_edges(original.size(), es), std::move(original)};
}

std::vector<VertexSet> connected_components(const Graph& g) {
  std::vector<VertexSet> parts;
  std::vector<char> seen(g.order(), 0);
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < g.order(); ++s) {
    if (seen[s]) continue;
    VertexSet part;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      part.push_back(v);
      for (Vertex w : g.neighbors(v))
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    std::sort(part.begin(), part.end());
    parts.push_back(std::move(part));
  }
  return parts;
}

bool is_connected(const Graph& g) { return connected_components(g).size() <= 1; }

VertexSet neighborhood_of_set(const Graph& g, std::span<const Vertex> s) {
  std::vector<char> in(g.order(), 0);
  for (Vertex v : s) in[v] = 1;
  std::vector<Vertex> out;
  for (Vertex v : s)
    for (Vertex w : g.neighbors(v))
      if (!in[w]) out.push_back(w);
  return make_vertex_set(std::move(out));
}

std::vector<std::size_t> distances_from(const Graph& g, std::span<const Vertex> sources) {
  constexpr auto inf = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(g.order(), inf);
  std::deque<Vertex> queue;
  for (Vertex s : sources)
    if (dist[s] == inf) {
      dist[s] = 0;
      queue.push_back(s);
    }
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (Vertex w : g.neighbors(v))
      if (dist[w] == inf) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
  }
  return dist;
}

Graph relabel(const Graph& g, std::span<const Vertex> perm) {
  std::vector<Edge> es;
  es.reserve(g.size());
  for (auto [u, v] : g.edges()) es.emplace_back(perm[u], perm[v]);
  return Graph::from_edges(g.order(), es);
}

EquivalencePartition::EquivalencePartition(std::size_t n, std::vector<VertexSet> classes)
    : class_of_(n, std::numeric_limits<std::uint32_t>::max()) {
  for (auto& c : classes) {
    if (c.empty()) throw Error(ErrorCode::InvalidPartition, "empty class");
    c = make_vertex_set(std::move(c));
  }
  std::sort(classes.begin(), classes.end());
  for (std::size_t i = 0; i < classes.size(); ++i)
    for (Vertex v : classes[i]) {
      if (v >= n) throw Error(ErrorCode::InvalidPartition, "vertex " + std::to_string(v) + " out of range");
      if (class_of_[v] != std::numeric_limits<std::uint32_t>::max())
        throw Error(ErrorCode::InvalidPartition, "vertex " + std::to_string(v) + " in two classes");
      class_of_[v] = static_cast<std::uint32_t>(i);
    }
  for (std::size_t v = 0; v < n; ++v)
    if (class_of_[v] == std::numeric_limits<std::uint32_t>::max())
      throw Error(ErrorCode::InvalidPartition, "vertex " + std::to_string(v) + " not covered");
  classes_ = std::move(classes);
}

EquivalencePartition EquivalencePartition::identity(std::size_t n) {
  std::vector<VertexSet> cs(n);
  for (Vertex v = 0; v < n; ++v) cs[v] = {v};
  return EquivalencePartition(n, std::move(cs));
}

std::size_t EquivalencePartition::largest_class() const noexcept {
  std::size_t s = 0;
  for (const auto& c : classes_) s = std::max(s, c.size());
  return s;
}

void TupleColoring::set(std::vector<Vertex> ordering, Color c) {
  if (c == kUncolored)
    entries_.erase(ordering);
  else
    entries_[std::move(ordering)] = c;
}

Color TupleColoring::get(std::span<const Vertex> ordering) const {
  auto it = entries_.find(std::vector<Vertex>(ordering.begin(), ordering.end()));
  return it == entries_.end() ? kUncolored : it->second;
}

Color TupleColoring::max_color() const noexcept {
  Color m = 0;
  for (const auto& [k, c] : entries_) m = std::max(m, c);
  return m;
}

void check_tuple_coloring(const EquivalencePartition& r, const TupleColoring& tc) {
  for (const auto& [ord, c] : tc.entries()) {
    if (ord.empty() || ord.front() >= r.vertex_count())
      throw Error(ErrorCode::PermutationMismatch, "ordering outside the vertex range");
    for (Vertex v : ord)
      if (v >= r.vertex_count()) throw Error(ErrorCode::PermutationMismatch, "ordering outside the vertex range");
    if (make_vertex_set(ord) != r.members(r.class_of(ord.front())))
      throw Error(ErrorCode::PermutationMismatch, "ordering is not a permutation of one class");
  }
}

ColoredGraph ColoredGraph::plain(Graph g) {
  auto n = g.order();
  return {std::move(g), EquivalencePartition::identity(n), {}};
}

ColoredGraph induced_colored(const ColoredGraph& g, std::span<const Vertex> s, std::vector<Vertex>* original) {
  auto sub = induced_subgraph(g.graph, s);
  std::vector<std::uint32_t> index(g.graph.order(), std::numeric_limits<std::uint32_t>::max());
  for (std::size_t i = 0; i < sub.original.size(); ++i) index[sub.original[i]] = static_cast<std::uint32_t>(i);
  std::vector<VertexSet> classes;
  for (const auto& c : g.partition.classes()) {
    VertexSet kept;
    for (Vertex v : c)
      if (index[v] != std::numeric_limits<std::uint32_t>::max()) kept.push_back(index[v]);
    if (!kept.empty()) classes.push_back(std::move(kept));
  }
  TupleColoring tc;
  for (const auto& [ord, c] : g.coloring.entries()) {
    std::vector<Vertex> mapped;
    for (Vertex v : ord) {
      if (index[v] == std::numeric_limits<std::uint32_t>::max()) break;
      mapped.push_back(index[v]);
    }
    if (mapped.size() == ord.size()) tc.set(std::move(mapped), c);
  }
  ColoredGraph out{std::move(sub.graph), EquivalencePartition(s.size(), std::move(classes)), std::move(tc)};
  if (original) *original = std::move(sub.original);
  return out;
}

ColoredGraph relabel(const ColoredGraph& g, std::span<const Vertex> perm) {
  std::vector<VertexSet> classes;
  for (const auto& c : g.partition.classes()) {
    VertexSet m;
    for (Vertex v : c) m.push_back(perm[v]);
    classes.push_back(std::move(m));
  }
  TupleColoring tc;
  for (const auto& [ord, c] : g.coloring.entries()) {
    std::vector<Vertex> m;
    for (Vertex v : ord) m.push_back(perm[v]);
    tc.set(std::move(m), c);
  }
  return {relabel(g.graph, perm), EquivalencePartition(g.graph.order(), std::move(classes)), std::move(tc)};
}

QuotientGraph quotient_graph(const Graph& g, const EquivalencePartition& r) {
  if (r.vertex_count() != g.order())
    throw Error(ErrorCode::InvalidPartition, "partition does not cover the vertex set");
  QuotientGraph q;
  q.projection.resize(g.order());
  for (Vertex v = 0; v < g.order(); ++v) q.projection[v] = static_cast<std::uint32_t>(r.class_of(v));
  std::vector<Edge> es;
  for (auto [u, v] : g.edges()) {
    auto a = q.projection[u], b = q.projection[v];
    if (a != b) es.emplace_back(std::min(a, b), std::max(a, b));
  }
  q.graph = Graph::from_edges(r.class_count(), es);
  return q;
}

}  // namespace tdiso
