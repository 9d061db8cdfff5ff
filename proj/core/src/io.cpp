#include "tdiso/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "tdiso/error.hpp"

namespace tdiso {

namespace {

std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    out.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

std::uint64_t to_uint(std::string_view w, std::size_t line) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
  if (ec != std::errc{} || p != w.data() + w.size())
    throw ParseError(line, "expected a nonnegative integer, got '" + std::string(w) + "'");
  return v;
}

Vertex to_vertex(std::string_view w, std::size_t n, std::size_t line) {
  auto v = to_uint(w, line);
  if (v < 1 || v > n) throw ParseError(line, "vertex " + std::string(w) + " outside 1.." + std::to_string(n));
  return static_cast<Vertex>(v - 1);
}

std::string join_vertices(const std::vector<Vertex>& vs) {
  std::string s;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(vs[i] + 1);
  }
  return s;
}

}  // namespace

ColoredGraph GiDocument::colored() const {
  return {graph, partition ? *partition : EquivalencePartition::identity(graph.order()),
          coloring ? *coloring : TupleColoring{}};
}

GiDocument parse_gi(std::string_view text) {
  GiDocument doc;
  std::optional<std::size_t> n;
  std::size_t declared_m = 0;
  std::vector<Edge> edges;
  std::vector<VertexSet> class_lines;
  std::vector<std::size_t> class_line_no;
  struct PendingColor {
    std::size_t line;
    std::size_t cls;
    std::vector<Vertex> ordering;
    Color color;
  };
  std::vector<PendingColor> pending;

  auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t ln = i + 1;
    auto words = split_words(lines[i]);
    if (words.empty()) continue;
    const auto tag = words[0];
    if (tag == "c") {
      auto body = lines[i].substr(lines[i].find('c') + 1);
      while (!body.empty() && (body.front() == ' ' || body.front() == '\t')) body.remove_prefix(1);
      while (!body.empty() && body.back() == '\r') body.remove_suffix(1);
      doc.comments.emplace_back(body);
      continue;
    }
    if (tag == "p") {
      if (n) throw ParseError(ln, "duplicate header");
      if (words.size() != 4 || words[1] != "gi") throw ParseError(ln, "header must be 'p gi <n> <m>'");
      n = to_uint(words[2], ln);
      declared_m = to_uint(words[3], ln);
      continue;
    }
    if (!n) throw ParseError(ln, "line before header");
    if (tag == "e") {
      if (words.size() != 3) throw ParseError(ln, "edge line must be 'e <u> <v>'");
      auto u = to_vertex(words[1], *n, ln), v = to_vertex(words[2], *n, ln);
      if (u == v) throw ParseError(ln, "self-loop");
      edges.emplace_back(u, v);
    } else if (tag == "q") {
      if (words.size() < 2) throw ParseError(ln, "empty class");
      VertexSet cls;
      for (std::size_t w = 1; w < words.size(); ++w) cls.push_back(to_vertex(words[w], *n, ln));
      auto sorted = make_vertex_set(cls);
      if (sorted.size() != cls.size())
        throw Error(ErrorCode::DuplicateClassMember, "line " + std::to_string(ln) + ": repeated vertex");
      for (std::size_t c = 0; c < class_lines.size(); ++c) {
        VertexSet common;
        std::set_intersection(class_lines[c].begin(), class_lines[c].end(), sorted.begin(), sorted.end(),
                              std::back_inserter(common));
        if (!common.empty())
          throw Error(ErrorCode::DuplicateClassMember, "line " + std::to_string(ln) + ": vertex " +
                                                           std::to_string(common.front() + 1) +
                                                           " already in class on line " +
                                                           std::to_string(class_line_no[c]));
      }
      class_lines.push_back(std::move(sorted));
      class_line_no.push_back(ln);
    } else if (tag == "t") {
      if (words.size() < 4) throw ParseError(ln, "tuple color line must be 't <class> <v...> <color>'");
      auto cls = to_uint(words[1], ln);
      std::vector<Vertex> ord;
      for (std::size_t w = 2; w + 1 < words.size(); ++w) ord.push_back(to_vertex(words[w], *n, ln));
      auto color = to_uint(words.back(), ln);
      pending.push_back({ln, static_cast<std::size_t>(cls), std::move(ord), static_cast<Color>(color)});
    } else {
      throw ParseError(ln, "unknown line tag '" + std::string(tag) + "'");
    }
  }
  if (!n) throw ParseError(0, "missing header");
  if (edges.size() != declared_m)
    throw ParseError(0, "header declares " + std::to_string(declared_m) + " edges, found " +
                            std::to_string(edges.size()));
  doc.graph = Graph::from_edges(*n, edges);

  if (!class_lines.empty() || !pending.empty()) {
    std::vector<char> covered(*n, 0);
    std::vector<VertexSet> classes = class_lines;
    for (const auto& c : class_lines)
      for (Vertex v : c) covered[v] = 1;
    for (Vertex v = 0; v < *n; ++v)
      if (!covered[v]) classes.push_back({v});
    doc.partition = EquivalencePartition(*n, std::move(classes));
    TupleColoring tc;
    for (auto& p : pending) {
      if (p.cls < 1 || p.cls > class_lines.size())
        throw ParseError(p.line, "class index " + std::to_string(p.cls) + " does not name a 'q' line");
      if (make_vertex_set(p.ordering) != class_lines[p.cls - 1] || p.ordering.size() != class_lines[p.cls - 1].size())
        throw Error(ErrorCode::PermutationMismatch,
                    "line " + std::to_string(p.line) + ": ordering is not a permutation of its class");
      tc.set(std::move(p.ordering), p.color);
    }
    doc.coloring = std::move(tc);
  }
  return doc;
}

std::string serialize_gi(const Graph& g, const std::vector<std::string>& comments) {
  std::ostringstream os;
  for (const auto& c : comments) os << "c " << c << '\n';
  os << "p gi " << g.order() << ' ' << g.size() << '\n';
  for (auto [u, v] : g.edges()) os << "e " << u + 1 << ' ' << v + 1 << '\n';
  return os.str();
}

std::string serialize_gi(const ColoredGraph& g, const std::vector<std::string>& comments) {
  std::string out = serialize_gi(g.graph, comments);
  const auto& classes = g.partition.classes();
  std::vector<char> colored(classes.size(), 0);
  for (const auto& [ord, c] : g.coloring.entries()) colored[g.partition.class_of(ord.front())] = 1;
  std::map<std::size_t, std::size_t> line_of;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (classes[c].size() < 2 && !colored[c]) continue;
    line_of[c] = line_of.size() + 1;
    out += "q " + join_vertices(classes[c]) + '\n';
  }
  for (const auto& [ord, c] : g.coloring.entries())
    out += "t " + std::to_string(line_of.at(g.partition.class_of(ord.front()))) + ' ' + join_vertices(ord) + ' ' +
           std::to_string(c) + '\n';
  return out;
}

std::vector<VertexSet> parse_bag_family(std::string_view text) {
  std::vector<VertexSet> out;
  auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto line = lines[i];
    if (auto h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
    auto words = split_words(line);
    if (words.empty()) continue;
    std::vector<Vertex> bag;
    for (auto w : words) {
      auto v = to_uint(w, i + 1);
      if (v < 1) throw ParseError(i + 1, "vertices are 1-indexed");
      bag.push_back(static_cast<Vertex>(v - 1));
    }
    out.push_back(make_vertex_set(std::move(bag)));
  }
  return out;
}

std::string serialize_bag_family(const std::vector<VertexSet>& sets) {
  std::string out;
  for (const auto& s : sets) out += join_vertices(s) + '\n';
  return out;
}

DecompositionDump parse_decomposition(std::string_view text) {
  std::map<std::uint64_t, std::size_t> index;
  std::vector<VertexSet> bags;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> raw_edges;
  std::vector<std::size_t> edge_lines;
  std::optional<std::uint64_t> raw_root;
  auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t ln = i + 1;
    auto words = split_words(lines[i]);
    if (words.empty() || words[0] == "c" || words[0].front() == '#') continue;
    if (words[0] == "b") {
      if (words.size() < 3) throw ParseError(ln, "bag line must be 'b <id> <v...>'");
      auto id = to_uint(words[1], ln);
      if (index.count(id)) throw ParseError(ln, "duplicate bag id");
      index[id] = bags.size();
      std::vector<Vertex> bag;
      for (std::size_t w = 2; w < words.size(); ++w) {
        auto v = to_uint(words[w], ln);
        if (v < 1) throw ParseError(ln, "vertices are 1-indexed");
        bag.push_back(static_cast<Vertex>(v - 1));
      }
      bags.push_back(make_vertex_set(std::move(bag)));
    } else if (words[0] == "d") {
      if (words.size() != 3) throw ParseError(ln, "tree edge line must be 'd <id> <id>'");
      raw_edges.emplace_back(to_uint(words[1], ln), to_uint(words[2], ln));
      edge_lines.push_back(ln);
    } else if (words[0] == "r") {
      if (words.size() != 2) throw ParseError(ln, "root line must be 'r <id>'");
      raw_root = to_uint(words[1], ln);
    } else {
      throw ParseError(ln, "unknown line tag '" + std::string(words[0]) + "'");
    }
  }
  DecompositionDump out;
  out.decomposition.bags = std::move(bags);
  for (std::size_t e = 0; e < raw_edges.size(); ++e) {
    auto a = index.find(raw_edges[e].first), b = index.find(raw_edges[e].second);
    if (a == index.end() || b == index.end()) throw ParseError(edge_lines[e], "tree edge names an unknown bag");
    out.decomposition.tree.emplace_back(a->second, b->second);
  }
  if (raw_root) {
    auto r = index.find(*raw_root);
    if (r == index.end()) throw ParseError(0, "root names an unknown bag");
    out.root = r->second;
  }
  return out;
}

std::string serialize_decomposition(const StrongTreeDecomposition& d, std::optional<std::size_t> root) {
  std::string out;
  for (std::size_t i = 0; i < d.bags.size(); ++i) out += "b " + std::to_string(i + 1) + ' ' + join_vertices(d.bags[i]) + '\n';
  for (auto [a, b] : d.tree) out += "d " + std::to_string(a + 1) + ' ' + std::to_string(b + 1) + '\n';
  if (root) out += "r " + std::to_string(*root + 1) + '\n';
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::BadParams, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::BadParams, "cannot write '" + path + "'");
  out << content;
}

}  // namespace tdiso
