#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "selftest.hpp"
#include "tdiso/block_reduce.hpp"
#include "tdiso/connectivity.hpp"
#include "tdiso/decomposition.hpp"
#include "tdiso/error.hpp"
#include "tdiso/families.hpp"
#include "tdiso/io.hpp"
#include "tdiso/root_enum.hpp"
#include "tdiso/solvers.hpp"
#include "tdiso/wl.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace tdiso;

constexpr int kExitAccept = 0;
constexpr int kExitReject = 1;
constexpr int kExitError = 2;

struct Global {
  bool pretty = false;
  bool timing = false;
  std::size_t jobs = 1;
  std::size_t cap_tuples = kDefaultTupleCap;
  std::size_t cap_brute = kBruteCap;
};

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::Accept: return kExitAccept;
    case Verdict::Reject: return kExitReject;
    case Verdict::Infeasible: return kExitError;
  }
  return kExitError;
}

void emit(const Global& g, const json& j) { std::cout << (g.pretty ? j.dump(2) : j.dump()) << '\n'; }

json timing_field(const Global& g, double seconds) { return g.timing ? json(seconds) : json(nullptr); }

GiDocument load_graph(const std::string& path) { return parse_gi(read_file(path)); }

BagFamily load_bags(const std::string& path) { return BagFamily(parse_bag_family(read_file(path))); }

std::vector<Vertex> to_zero_based(const std::vector<std::size_t>& ones, std::size_t n) {
  std::vector<Vertex> out;
  for (auto v : ones) {
    if (v == 0 || v > n) throw Error(ErrorCode::OutOfRange, "vertex " + std::to_string(v) + " outside 1.." + std::to_string(n));
    out.push_back(static_cast<Vertex>(v - 1));
  }
  return out;
}

json vertex_list(const VertexSet& s) {
  json a = json::array();
  for (Vertex v : s) a.push_back(v + 1);
  return a;
}

class Clock {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count(); }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

// gen

struct GenArgs {
  std::string family;
  std::optional<std::size_t> k, p, n, m;
  std::optional<std::uint64_t> seed;
  std::string out;
};

std::size_t need(const std::optional<std::size_t>& v, const char* name) {
  if (!v) throw Error(ErrorCode::BadParams, std::string("missing --") + name);
  return *v;
}

int run_gen(const GenArgs& a) {
  std::vector<std::string> comments;
  Graph g;
  if (a.family == "kp-path" || a.family == "kp-comb") {
    auto lg = a.family == "kp-path" ? kp_path(need(a.k, "k"), need(a.p, "p")) : kp_comb(need(a.k, "k"), need(a.p, "p"));
    comments.push_back(lg.name);
    std::string black = "black";
    for (Vertex v : lg.black) black += " " + std::to_string(v + 1);
    comments.push_back(black);
    g = std::move(lg.graph);
  } else if (a.family == "cycle") {
    g = cycle(need(a.n, "n"));
  } else if (a.family == "path") {
    g = path(need(a.n, "n"));
  } else if (a.family == "complete") {
    g = complete(need(a.n, "n"));
  } else {
    if (!a.seed) throw Error(ErrorCode::BadParams, "random graphs need --seed");
    g = random_graph(need(a.n, "n"), need(a.m, "m"), *a.seed);
    comments.push_back("random seed " + std::to_string(*a.seed));
  }
  const auto text = serialize_gi(g, comments);
  if (a.out.empty())
    std::cout << text;
  else
    write_file(a.out, text);
  return 0;
}

// width

struct WidthArgs {
  std::string kind;
  std::string graph;
  bool roots = false;
  std::vector<std::size_t> root;
  std::string decomposition;
};

void print_roots(const std::vector<VertexSet>& roots) { std::cout << serialize_bag_family(roots); }

int run_width(const Global& gl, const WidthArgs& a) {
  const auto g = load_graph(a.graph).graph;
  if (!a.decomposition.empty()) {
    auto dump = parse_decomposition(read_file(a.decomposition));
    bool ok = false;
    if (a.kind == "stw") ok = validate_strong_td(g, dump.decomposition);
    if (a.kind == "cstw") ok = validate_connected_strong_td(g, dump.decomposition);
    if (a.kind == "tdw" || a.kind == "ctdw" || a.kind == "rtdw") {
      if (!dump.root) throw Error(ErrorCode::BadParams, "the decomposition has no root line");
      ok = validate_tdd(g, {dump.decomposition, *dump.root});
      const auto& r = dump.decomposition.bags[*dump.root];
      if (ok && a.kind == "ctdw") ok = is_connected(induced_subgraph(g, r).graph);
      if (ok && a.kind == "rtdw") ok = r.size() == 1;
    }
    if (!ok) throw Error(ErrorCode::BadParams, "not a valid " + a.kind + " decomposition");
    std::cout << dump.decomposition.width() << '\n';
    return 0;
  }
  if (a.kind == "stw") {
    std::cout << brute_stw(g, gl.cap_brute) << '\n';
  } else if (a.kind == "cstw") {
    std::cout << brute_cstw(g, gl.cap_brute) << '\n';
  } else if (a.kind == "tdw") {
    if (a.root.empty()) throw Error(ErrorCode::BadParams, "tdw needs --root or --decomposition");
    std::cout << tdw_of_root(g, make_vertex_set(to_zero_based(a.root, g.order()))).to_string() << '\n';
  } else {
    auto r = a.kind == "ctdw" ? brute_ctdw(g) : brute_rtdw(g);
    std::cout << r.width.to_string() << '\n';
    if (a.roots) print_roots(r.roots);
  }
  return 0;
}

// roots

int run_roots(const Global& gl, const std::string& path, std::size_t k) {
  const auto g = load_graph(path).graph;
  const Clock clock;
  auto fam = enumerate_root_sets(g, k);
  std::cout << serialize_bag_family(fam.sets);
  if (gl.pretty)
    std::cerr << fam.sets.size() << " root sets, widest branch " << fam.widest_branch << ", " << fam.explored
              << " saturated sets explored\n";
  if (gl.timing) std::cerr << "seconds " << clock.seconds() << '\n';
  return 0;
}

// wl

struct WlArgs {
  std::string g1, bags1, g2, bags2;
  std::string capture = "semi-smooth";
  std::size_t extra = 3;
};

int run_wl(const Global& gl, const WlArgs& a) {
  const auto d1 = load_graph(a.g1), d2 = load_graph(a.g2);
  const auto v1 = load_bags(a.bags1), v2 = load_bags(a.bags2);
  if (v1.width() != v2.width()) throw Error(ErrorCode::WidthMismatch, "the bag families differ in width");
  WlOptions opt;
  opt.tuple_cap = gl.cap_tuples;
  const Clock clock;
  Verdict v;
  std::size_t dimension;
  if (a.capture == "strong") {
    v = compare_with_strong_capture(d1.colored(), v1, d2.colored(), v2, opt);
    dimension = 2 * v1.width() + 3;
  } else {
    v = compare_graphs(d1.colored(), v1, d2.colored(), v2, a.extra, opt);
    dimension = v1.width() + a.extra;
  }
  json j;
  j["command"] = "wl";
  j["parameters"] = {{"capture", a.capture}, {"width", v1.width()}, {"dimension", dimension}};
  j["verdict"] = to_string(v);
  j["conditional"] = v == Verdict::Accept;
  j["timing"] = timing_field(gl, clock.seconds());
  emit(gl, j);
  return exit_code(v);
}

// reduce

struct ReduceArgs {
  std::string mode;
  std::vector<std::string> graphs;
  std::optional<std::size_t> k;
  std::string out;
};

int run_reduce_blocks(const Global& gl, const ReduceArgs& a) {
  if (a.graphs.size() != 1) throw Error(ErrorCode::BadParams, "reduce blocks takes one graph");
  const auto g = load_graph(a.graphs[0]).graph;
  const auto r = a.k ? kcon_closure(g, 2 * *a.k) : EquivalencePartition::identity(g.order());
  const ColoredGraph whole{g, r, {}};
  const auto forest = blocks_relative(g, r);
  if (!a.out.empty()) std::filesystem::create_directories(a.out);
  for (std::size_t b = 0; b < forest.blocks.size(); ++b) {
    json j;
    j["block"] = b + 1;
    j["vertices"] = vertex_list(forest.blocks[b]);
    json cuts = json::array();
    for (auto c : forest.block_cuts[b]) cuts.push_back(vertex_list(r.members(forest.cut_classes[c])));
    j["cut_classes"] = cuts;
    if (!a.out.empty()) {
      const auto file = (std::filesystem::path(a.out) / ("block_" + std::to_string(b + 1) + ".gi")).string();
      std::string members = "block of " + a.graphs[0] + ":";
      for (Vertex v : forest.blocks[b]) members += " " + std::to_string(v + 1);
      write_file(file, serialize_gi(induced_colored(whole, forest.blocks[b]), {members}));
      j["file"] = file;
    }
    emit(gl, j);
  }
  return 0;
}

int run_reduce_degree(const Global& gl, const ReduceArgs& a) {
  if (a.graphs.size() != 2) throw Error(ErrorCode::BadParams, "reduce degree takes two graphs");
  const auto k = need(a.k, "k");
  const auto g1 = load_graph(a.graphs[0]).graph, g2 = load_graph(a.graphs[1]).graph;
  if (!a.out.empty()) std::filesystem::create_directories(a.out);
  std::size_t calls = 0;
  const std::size_t cap = std::max<std::size_t>(gl.cap_brute, 4096);
  DegreeOracle oracle = [&](const Graph& x, const Graph& y) {
    ++calls;
    if (!a.out.empty()) {
      const auto stem = (std::filesystem::path(a.out) / ("instance_" + std::to_string(calls))).string();
      write_file(stem + "_a.gi", serialize_gi(x));
      write_file(stem + "_b.gi", serialize_gi(y));
    }
    return brute_force_iso(x, y, cap).verdict;
  };
  const Clock clock;
  ReductionTrace trace;
  const auto v = stw_to_degree_iso(g1, g2, k, oracle, &trace);
  for (const auto& e : trace.entries) {
    json j;
    j["round"] = e.round;
    j["block_sizes"] = {e.block_sizes.first, e.block_sizes.second};
    j["max_degree"] = e.max_degree;
    j["encoded_degree"] = e.encoded_degree;
    j["within_bound"] = e.within_bound;
    j["verdict"] = to_string(e.verdict);
    emit(gl, j);
  }
  json j;
  j["method"] = "degree-reduce";
  j["parameters"] = {{"k", k}, {"degree_bound", k >= 2 ? json(block_degree_bound(k)) : json(nullptr)}};
  j["verdict"] = to_string(v);
  j["conditional"] = false;
  j["timing"] = timing_field(gl, clock.seconds());
  emit(gl, j);
  return exit_code(v);
}

// iso

struct IsoArgs {
  std::string method = "brute";
  std::string g1, g2;
  std::optional<std::size_t> k, c;
  std::string bags1, bags2;
  std::string capture = "strong";
  bool vouch = false;
};

int run_iso(const Global& gl, const IsoArgs& a) {
  const auto d1 = load_graph(a.g1), d2 = load_graph(a.g2);
  const auto& g1 = d1.graph;
  const auto& g2 = d2.graph;
  WlOptions opt;
  opt.tuple_cap = gl.cap_tuples;
  json params = json::object();
  bool conditional = false;
  const Clock clock;
  Verdict v = Verdict::Reject;
  if (a.method == "brute") {
    const bool colored = d1.partition || d1.coloring || d2.partition || d2.coloring;
    v = colored ? brute_force_iso_colored(d1.colored(), d2.colored(), gl.cap_brute).verdict
                : brute_force_iso(g1, g2, gl.cap_brute).verdict;
    params["colored"] = colored;
  } else if (a.method == "wl" || a.method == "bags") {
    if (a.bags1.empty() || a.bags2.empty()) throw Error(ErrorCode::BadParams, a.method + " needs --bags1 and --bags2");
    const auto v1 = load_bags(a.bags1), v2 = load_bags(a.bags2);
    SuppliedOptions so;
    so.capture = a.capture == "semi-smooth" ? CaptureKind::SemiSmooth : CaptureKind::Strong;
    so.vouch = a.vouch;
    so.wl = opt;
    auto r = iso_with_supplied_bags(g1, v1, g2, v2, so);
    v = r.verdict;
    conditional = r.conditional;
    params["capture"] = a.capture;
    params["width"] = v1.width();
    params["vouch"] = a.vouch;
  } else if (a.method == "degree-reduce") {
    const auto k = need(a.k, "k");
    const std::size_t cap = std::max<std::size_t>(gl.cap_brute, 4096);
    v = stw_to_degree_iso(g1, g2, k, [cap](const Graph& x, const Graph& y) {
      return brute_force_iso(x, y, cap).verdict;
    });
    params["k"] = k;
  } else {
    const auto k = need(a.k, "k");
    params["k"] = k;
    if (a.method == "ctdw") {
      v = ctdw_iso(g1, g2, k, opt);
    } else if (a.method == "cstw") {
      v = cstw_iso(g1, g2, k, opt);
    } else {
      v = geodesic_stw_iso(g1, g2, k, a.c, opt);
      params["c"] = a.c ? json(*a.c) : json(nullptr);
    }
  }
  json j;
  j["method"] = a.method;
  j["parameters"] = params;
  j["verdict"] = to_string(v);
  j["conditional"] = conditional;
  j["timing"] = timing_field(gl, clock.seconds());
  emit(gl, j);
  return exit_code(v);
}

// selftest

int run_selftest(const Global& gl, const std::vector<int>& ids) {
  bool all = true;
  std::printf("%-3s %-4s %9s  %s\n", "#", "", "seconds", "criterion");
  selftest::run(ids, [&](const selftest::CriterionResult& r) {
    all = all && r.passed;
    std::printf("%-3d %-4s %9.2f  %s\n", r.id, r.passed ? "PASS" : "FAIL", gl.timing ? r.seconds : 0.0,
                r.title.c_str());
    std::printf("             %s\n", r.detail.c_str());
    std::fflush(stdout);
  });
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Isomorphism tests for graphs of bounded strong tree width and related parameters"};
  app.require_subcommand(1);
  app.fallthrough();
  Global gl;
  app.add_flag("--pretty", gl.pretty, "Indented JSON and human summaries");
  app.add_flag("--timing", gl.timing, "Report wall-clock seconds (null otherwise)");
  app.add_option("--jobs", gl.jobs, "Upper bound on worker threads")->check(CLI::PositiveNumber);
  app.add_option("--cap-tuples", gl.cap_tuples, "Largest restricted WL universe")->check(CLI::PositiveNumber);
  app.add_option("--cap-brute", gl.cap_brute, "Largest graph for brute-force searches")->check(CLI::PositiveNumber);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Write a generated graph in .gi format");
  gen_cmd->add_option("family", gen.family)->required()->check(
      CLI::IsMember({"kp-path", "kp-comb", "cycle", "path", "complete", "random"}));
  gen_cmd->add_option("--k", gen.k);
  gen_cmd->add_option("--p", gen.p);
  gen_cmd->add_option("--n", gen.n);
  gen_cmd->add_option("--m", gen.m);
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_option("-o,--output", gen.out);

  WidthArgs width;
  auto* width_cmd = app.add_subcommand("width", "Exact width by exhaustive search, or of a supplied decomposition");
  width_cmd->add_option("kind", width.kind)->required()->check(CLI::IsMember({"stw", "cstw", "tdw", "ctdw", "rtdw"}));
  width_cmd->add_option("graph", width.graph)->required();
  width_cmd->add_flag("--roots", width.roots, "Also list every optimal root (ctdw, rtdw)");
  width_cmd->add_option("--root", width.root, "Root set for tdw, 1-indexed")->delimiter(',');
  width_cmd->add_option("--decomposition", width.decomposition, "Validate this decomposition and print its width");

  std::string roots_graph;
  std::size_t roots_k = 0;
  auto* roots_cmd = app.add_subcommand("roots", "Root sets S with tdw_S <= k, one per line");
  roots_cmd->add_option("graph", roots_graph)->required();
  roots_cmd->add_option("--k", roots_k)->required()->check(CLI::PositiveNumber);

  WlArgs wl;
  auto* wl_cmd = app.add_subcommand("wl", "Restricted Weisfeiler-Lehman comparison over supplied bag families");
  wl_cmd->add_option("g1", wl.g1)->required();
  wl_cmd->add_option("bags1", wl.bags1)->required();
  wl_cmd->add_option("g2", wl.g2)->required();
  wl_cmd->add_option("bags2", wl.bags2)->required();
  wl_cmd->add_option("--capture", wl.capture)->check(CLI::IsMember({"strong", "semi-smooth"}));
  wl_cmd->add_option("--extra", wl.extra, "Dimensions beyond the family width")->check(CLI::Range(3, 64));

  ReduceArgs reduce;
  auto* reduce_cmd = app.add_subcommand("reduce", "Block decomposition and the reduction to bounded degree");
  reduce_cmd->add_option("mode", reduce.mode)->required()->check(CLI::IsMember({"blocks", "degree"}));
  reduce_cmd->add_option("graphs", reduce.graphs)->required();
  reduce_cmd->add_option("--k", reduce.k)->check(CLI::PositiveNumber);
  reduce_cmd->add_option("-o,--output", reduce.out, "Directory for the emitted .gi files");

  IsoArgs iso;
  auto* iso_cmd = app.add_subcommand("iso", "Decide isomorphism of two graphs");
  iso_cmd->add_option("--method", iso.method)
      ->check(CLI::IsMember({"brute", "wl", "ctdw", "cstw", "geodesic", "bags", "degree-reduce"}));
  iso_cmd->add_option("g1", iso.g1)->required();
  iso_cmd->add_option("g2", iso.g2)->required();
  iso_cmd->add_option("--k", iso.k)->check(CLI::PositiveNumber);
  iso_cmd->add_option("--c", iso.c)->check(CLI::PositiveNumber);
  iso_cmd->add_option("--bags1", iso.bags1);
  iso_cmd->add_option("--bags2", iso.bags2);
  iso_cmd->add_option("--capture", iso.capture)->check(CLI::IsMember({"strong", "semi-smooth"}));
  iso_cmd->add_flag("--vouch", iso.vouch, "The bag families are known to capture decompositions");

  std::vector<int> criteria;
  auto* self_cmd = app.add_subcommand("selftest", "Run the acceptance corpus");
  self_cmd->add_option("--criteria", criteria)->delimiter(',')->check(CLI::Range(1, selftest::kCriteria));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (*gen_cmd) return run_gen(gen);
    if (*width_cmd) return run_width(gl, width);
    if (*roots_cmd) return run_roots(gl, roots_graph, roots_k);
    if (*wl_cmd) {
      if (wl.capture == "strong" && wl_cmd->count("--extra"))
        throw Error(ErrorCode::BadParams, "--extra applies to semi-smooth capture only");
      return run_wl(gl, wl);
    }
    if (*reduce_cmd) return reduce.mode == "blocks" ? run_reduce_blocks(gl, reduce) : run_reduce_degree(gl, reduce);
    if (*iso_cmd) return run_iso(gl, iso);
    if (*self_cmd) return run_selftest(gl, criteria);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
