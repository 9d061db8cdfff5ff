#include "selftest.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "corpus.hpp"
#include "tdiso/block_reduce.hpp"
#include "tdiso/connectivity.hpp"
#include "tdiso/decomposition.hpp"
#include "tdiso/error.hpp"
#include "tdiso/families.hpp"
#include "tdiso/root_enum.hpp"
#include "tdiso/solvers.hpp"
#include "tdiso/wl.hpp"

namespace tdiso::selftest {

namespace {

// Wall-clock limits per criterion, seconds.
constexpr double kLimitPathCount = 60.0;
constexpr double kLimitCycle = 5.0;
constexpr double kLimitComb = 60.0;
constexpr double kLimitRooted = 60.0;

constexpr std::size_t kRefinementInstances = 500;
constexpr double kRefinementUniverseCap = 5000.0;
constexpr std::size_t kPairsPerKind = 100;  // isomorphic and perturbed, per solver
constexpr std::size_t kRelabelings = 100;
constexpr double kSolverUniverseBudget = 40000.0;  // tuples per graph in one comparison

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

BagFamily all_subsets(std::size_t n, std::size_t w) {
  std::vector<VertexSet> sets;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) > w) continue;
    VertexSet s;
    for (Vertex v = 0; v < n; ++v)
      if (mask >> v & 1u) s.push_back(v);
    sets.push_back(std::move(s));
  }
  return BagFamily(std::move(sets));
}

std::vector<Vertex> permutation(std::size_t n, std::uint64_t seed) { return random_permutation(n, seed); }

struct Outcome {
  bool passed = false;
  std::string detail;
};

// Width 2k-1 with p^(k-1) optimal roots on the (k,p)-path.
Outcome path_root_count() {
  constexpr std::size_t k = 3, p = 10;
  auto g = kp_path(k, p);
  auto r = brute_ctdw(g.graph);
  const std::size_t want_width = 2 * k - 1, want_count = ipow(p, k - 1);
  std::ostringstream d;
  d << "width " << r.width.to_string() << " (want " << want_width << "), optimal roots " << r.roots.size()
    << " (want " << want_count << ")";
  bool ok = r.width == Width::of(want_width) && r.roots.size() == want_count;
  for (const auto& s : r.roots) ok = ok && is_connected(induced_subgraph(g.graph, s).graph);
  return {ok, d.str()};
}

Outcome cycle_separation() {
  auto g = cycle(6);
  auto ctdw = brute_ctdw(g).width;
  auto cstw = brute_cstw(g);
  std::ostringstream d;
  d << "ctdw(C6) " << ctdw.to_string() << " (want <= 2), cstw(C6) " << cstw << " (want >= 3)";
  return {ctdw <= 2 && cstw >= 3, d.str()};
}

// Bag {i, partner, first white} per path vertex, the other whites as singletons.
StrongTreeDecomposition comb_decomposition(std::size_t k, std::size_t p) {
  StrongTreeDecomposition d;
  for (std::size_t i = 0; i < k; ++i) {
    auto w0 = static_cast<Vertex>(2 * k + i * p);
    d.bags.push_back(make_vertex_set({static_cast<Vertex>(i), static_cast<Vertex>(k + i), w0}));
  }
  for (std::size_t i = 0; i + 1 < k; ++i) d.tree.emplace_back(i, i + 1);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 1; j < p; ++j) {
      d.bags.push_back({static_cast<Vertex>(2 * k + i * p + j)});
      d.tree.emplace_back(i, d.bags.size() - 1);
    }
  return d;
}

Outcome comb_separation() {
  constexpr std::size_t k = 3, p = 6;
  auto g = kp_comb(k, p);
  auto d = comb_decomposition(k, p);
  const bool valid = validate_connected_strong_td(g.graph, d);
  auto ctdw = brute_ctdw(g.graph).width;
  std::ostringstream d_out;
  d_out << "explicit connected decomposition " << (valid ? "valid" : "INVALID") << " width " << d.width()
        << " (want <= 3), ctdw " << ctdw.to_string() << " (want >= 3)";
  return {valid && d.width() <= 3 && !(ctdw <= 2), d_out.str()};
}

Outcome rooted_separation() {
  auto g = kp_path(3, 6);
  auto ctdw = brute_ctdw(g.graph).width;
  auto rtdw = brute_rtdw(g.graph).width;
  std::ostringstream d;
  d << "ctdw " << ctdw.to_string() << " (want <= 5), rtdw " << rtdw.to_string() << " (want >= 3)";
  return {ctdw <= 5 && !(rtdw <= 2), d.str()};
}

Outcome shared_bag_property() {
  std::size_t pairs = 0, decompositions = 0, violations = 0;
  for (const auto& cg : desk_corpus()) {
    const auto& g = cg.graph;
    for (std::size_t k : {1, 2}) {
      auto linked = kcon_pairs(g, 2 * k);
      pairs += linked.size();
      for_each_strong_partition(g, k, false, [&](const std::vector<VertexSet>& bags) {
        ++decompositions;
        std::vector<std::size_t> bag_of(g.order());
        for (std::size_t b = 0; b < bags.size(); ++b)
          for (Vertex v : bags[b]) bag_of[v] = b;
        for (auto [u, v] : linked)
          if (bag_of[u] != bag_of[v]) ++violations;
        return true;
      });
    }
  }
  std::ostringstream d;
  d << pairs << " linked pairs, " << decompositions << " decompositions, " << violations << " violations";
  return {violations == 0 && decompositions > 0, d.str()};
}

ColoredGraph random_colored(std::size_t n, std::mt19937_64& rng) {
  const std::size_t max_m = n * (n - 1) / 2;
  auto g = random_graph(n, max_m == 0 ? 0 : rng() % (max_m + 1), rng());
  if (rng() % 3 != 0) return ColoredGraph::plain(std::move(g));
  std::vector<Vertex> order = permutation(n, rng());
  std::vector<VertexSet> classes;
  for (std::size_t i = 0; i < n;) {
    const std::size_t len = std::min<std::size_t>(1 + rng() % 3, n - i);
    classes.push_back(make_vertex_set({order.begin() + static_cast<std::ptrdiff_t>(i),
                                       order.begin() + static_cast<std::ptrdiff_t>(i + len)}));
    i += len;
  }
  TupleColoring tc;
  for (const auto& c : classes) {
    auto ord = c;
    do {
      if (rng() % 2) tc.set(ord, static_cast<Color>(1 + rng() % 3));
    } while (std::next_permutation(ord.begin(), ord.end()));
  }
  return {std::move(g), EquivalencePartition(n, std::move(classes)), std::move(tc)};
}

Outcome refinement_equivalence() {
  std::mt19937_64 rng(20261016);
  std::size_t done = 0, mismatches = 0, largest = 0;
  while (done < kRefinementInstances) {
    const std::size_t n = 2 + rng() % 6;
    auto g = random_colored(n, rng);
    std::vector<VertexSet> sets;
    const std::size_t count = 1 + rng() % 5;
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t size = 1 + rng() % std::min<std::size_t>(3, n);
      auto perm = permutation(n, rng());
      sets.push_back(make_vertex_set({perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(size)}));
    }
    BagFamily family(std::move(sets));
    const std::size_t dim = family.width() + rng() % 4;
    if (TupleUniverse::count(n, family, dim) > kRefinementUniverseCap) continue;
    TupleUniverse u(n, family, dim);
    ColorTable table;
    auto init = initial_coloring(g, u, table);
    auto fast = stable_refinement(u, init, table);
    auto slow = naive_stable(u, init, table);
    if (partition_of(fast) != partition_of(slow)) ++mismatches;
    largest = std::max(largest, u.size());
    ++done;
  }
  std::ostringstream d;
  d << done << " instances (largest universe " << largest << "), " << mismatches << " mismatches";
  return {mismatches == 0, d.str()};
}

struct Base {
  std::string name;
  Graph graph;
  std::size_t k = 1;
};

using PairSolver = std::function<Verdict(const Base&, const Graph&, const Graph&)>;

struct Tally {
  std::size_t decided = 0, infeasible = 0, wrong = 0, errors = 0;
  std::string first_problem;
};

// Relabeled copies and relabeled perturbations, checked against brute force,
// until kPairsPerKind of each kind are decided.
Tally cross_check(const std::vector<Base>& bases, const PairSolver& solve) {
  Tally t;
  std::size_t decided[2] = {0, 0};
  auto run = [&](const Base& b, const Graph& h, int kind) {
    const auto truth = brute_force_iso(b.graph, h).verdict;
    const char* label = kind == 0 ? "relabeled" : "perturbed";
    try {
      const auto v = solve(b, b.graph, h);
      if (v == Verdict::Infeasible) {
        ++t.infeasible;
        return;
      }
      ++t.decided;
      ++decided[kind];
      if (v != truth) {
        ++t.wrong;
        if (t.first_problem.empty())
          t.first_problem = b.name + " " + label + ": " + to_string(v) + " vs brute " + to_string(truth);
      }
    } catch (const Error& e) {
      ++t.errors;
      if (t.first_problem.empty()) t.first_problem = b.name + " " + label + ": " + e.what();
    }
  };
  if (bases.empty()) return t;
  const std::size_t max_rounds = 20 * kPairsPerKind;
  for (std::uint64_t round = 0; round < max_rounds && (decided[0] < kPairsPerKind || decided[1] < kPairsPerKind);
       ++round)
    for (std::size_t i = 0; i < bases.size(); ++i) {
      const auto& b = bases[i];
      const std::uint64_t seed = 1000003 * round + 7919 * i + 17;
      const auto perm = permutation(b.graph.order(), seed);
      if (decided[0] < kPairsPerKind) run(b, relabel(b.graph, perm), 0);
      if (decided[1] < kPairsPerKind) run(b, relabel(perturb(b.graph, seed + 1), perm), 1);
    }
  return t;
}

struct CorpusEntry {
  CorpusGraph graph;
  Profile profile;
};

const std::vector<CorpusEntry>& profiled_corpus() {
  static const std::vector<CorpusEntry> entries = [] {
    std::vector<CorpusEntry> out;
    for (auto& cg : desk_corpus()) out.push_back({cg, profile(cg.graph)});
    return out;
  }();
  return entries;
}

template <typename Pred, typename Param>
std::vector<Base> pick(Pred keep, Param param) {
  std::vector<Base> out;
  for (const auto& e : profiled_corpus())
    if (keep(e)) out.push_back({e.graph.name, e.graph.graph, param(e)});
  return out;
}

// Size of one restricted WL universe for a strong capture family of g.
double strong_capture_cost(const Graph& g, const BagFamily& family) {
  if (family.empty()) return 0.0;
  return TupleUniverse::count(g.order(), pairwise_union_family(family), 2 * family.width() + 3);
}

double ctdw_cost(const Graph& g, std::size_t k) {
  return strong_capture_cost(g, bags_from_roots(g, enumerate_root_sets(g, k), k));
}

double geodesic_cost(const Graph& g, std::size_t k) {
  const auto c = std::max<std::size_t>(geodesic_cycle_length(g), 1);
  return strong_capture_cost(g, capture_bags_geodesic(g, k, c));
}

Verdict brute_degree_oracle(const Graph& a, const Graph& b) { return brute_force_iso(a, b, 4096).verdict; }

Verdict brute_block_oracle(const ColoredGraph& a, const ColoredGraph& b) {
  return brute_force_iso_colored(a, b, 9).verdict;
}

SuppliedResult supplied_subsets(const Graph& a, const Graph& b, std::size_t w) {
  const auto fa = all_subsets(a.order(), w), fb = all_subsets(b.order(), w);
  SuppliedOptions opt;
  opt.capture = CaptureKind::SemiSmooth;
  return iso_with_supplied_bags(a, fa, b, fb, opt);
}

Outcome solver_agreement() {
  struct Entry {
    std::string name;
    std::vector<Base> bases;
    PairSolver solve;
    std::size_t cycle_k;
  };
  std::vector<Entry> solvers;
  solvers.push_back({"ctdw_iso",
                     pick([](const CorpusEntry& e) {
                            return e.profile.ctdw && ctdw_cost(e.graph.graph, *e.profile.ctdw) <= kSolverUniverseBudget;
                          },
                          [](const CorpusEntry& e) { return *e.profile.ctdw; }),
                     [](const Base& b, const Graph& x, const Graph& y) { return ctdw_iso(x, y, b.k); }, 2});
  solvers.push_back({"cstw_iso", pick([](const CorpusEntry& e) { return e.profile.cstw <= 2; },
                                      [](const CorpusEntry& e) { return e.profile.cstw; }),
                     [](const Base& b, const Graph& x, const Graph& y) { return cstw_iso(x, y, b.k); }, 3});
  solvers.push_back({"geodesic_stw_iso",
                     pick([](const CorpusEntry& e) {
                            return geodesic_cost(e.graph.graph, e.profile.stw) <= kSolverUniverseBudget;
                          },
                          [](const CorpusEntry& e) { return e.profile.stw; }),
                     [](const Base& b, const Graph& x, const Graph& y) { return geodesic_stw_iso(x, y, b.k); }, 2});
  solvers.push_back({"stw_to_degree_iso", pick([](const CorpusEntry&) { return true; },
                                               [](const CorpusEntry& e) { return e.profile.stw; }),
                     [](const Base& b, const Graph& x, const Graph& y) {
                       return stw_to_degree_iso(x, y, b.k, brute_degree_oracle);
                     },
                     2});
  solvers.push_back({"iso_via_blocks", pick([](const CorpusEntry&) { return true; }, [](const CorpusEntry&) { return std::size_t{0}; }),
                     [](const Base&, const Graph& x, const Graph& y) {
                       return iso_via_blocks(ColoredGraph::plain(x), ColoredGraph::plain(y), brute_block_oracle);
                     },
                     0});
  solvers.push_back({"iso_with_supplied_bags",
                     pick([](const CorpusEntry& e) {
                            return e.profile.forest || (e.graph.graph.order() <= 6 && e.profile.treewidth_two);
                          },
                          [](const CorpusEntry& e) { return std::size_t{e.profile.forest ? 2u : 3u}; }),
                     [](const Base& b, const Graph& x, const Graph& y) { return supplied_subsets(x, y, b.k).verdict; },
                     3});

  const Graph c6 = cycle(6);
  const Graph two_c3 = Graph::from_edges(6, std::vector<Edge>{{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
  bool ok = true;
  std::ostringstream d;
  for (const auto& s : solvers) {
    const auto t0 = Clock::now();
    auto t = cross_check(s.bases, s.solve);
    Verdict split = Verdict::Accept;
    try {
      split = s.solve(Base{"C6", c6, s.cycle_k}, c6, two_c3);
    } catch (const Error&) {
      split = Verdict::Infeasible;
    }
    d << (d.tellp() > 0 ? "; " : "") << s.name << " on " << s.bases.size() << " graphs: ";
    const bool good = t.wrong == 0 && t.errors == 0 && t.decided >= 2 * kPairsPerKind && split == Verdict::Reject;
    ok = ok && good;
    d << t.decided << " decided, " << t.wrong << " wrong, "
      << t.infeasible << " infeasible, " << t.errors << " errors, C6/2C3 " << to_string(split) << ", "
      << static_cast<long>(std::lround(since(t0) * 10)) / 10.0 << "s";
    if (!t.first_problem.empty()) d << " [" << t.first_problem << "]";
  }
  return {ok, d.str()};
}

Outcome degree_bound() {
  std::size_t instances = 0, violations = 0, unsound = 0, runs = 0;
  std::size_t worst = 0;
  auto check = [&](const LabeledGraph& lg, std::size_t k) {
    const auto perm = permutation(lg.graph.order(), 31 * k + lg.graph.order());
    ReductionTrace trace;
    const auto v = stw_to_degree_iso(lg.graph, relabel(lg.graph, perm), k, brute_degree_oracle, &trace);
    ++runs;
    if (v == Verdict::Reject) ++unsound;
    for (const auto& e : trace.entries) {
      ++instances;
      worst = std::max(worst, e.max_degree);
      if (e.max_degree > block_degree_bound(k)) ++violations;
    }
  };
  for (std::size_t k : {2, 3}) {
    for (std::size_t p = 1; p <= 6; ++p) check(kp_path(3, p), k);
    for (std::size_t kk : {2, 3})
      for (std::size_t p = 1; p <= 4; ++p) check(kp_comb(kk, p), k);
  }
  std::ostringstream d;
  d << runs << " runs, " << instances << " block instances, worst degree " << worst << ", " << violations
    << " violations, " << unsound << " rejected isomorphic pairs";
  return {violations == 0 && unsound == 0 && instances > 0, d.str()};
}

struct Generator {
  std::string name;
  std::function<std::vector<VertexSet>(const Graph&)> make;
  bool needs_connected = false;
};

Outcome family_invariance() {
  constexpr std::size_t k = 2;
  std::vector<Generator> gens = {
      {"closure", [](const Graph& g) { return kcon_closure(g, 2 * k).classes(); }, false},
      {"roots", [](const Graph& g) { return enumerate_root_sets(g, k).sets; }, true},
      {"root bags",
       [](const Graph& g) { return bags_from_roots(g, enumerate_root_sets(g, k), k).sets(); }, true},
      {"connected subsets", [](const Graph& g) { return connected_subsets(g, k); }, false},
      {"quotient capture", [](const Graph& g) { return capture_bags_connected_quotient(g, k).sets(); }, false},
      {"geodesic capture",
       [](const Graph& g) {
         return capture_bags_geodesic(g, k, std::max<std::size_t>(geodesic_cycle_length(g), 1)).sets();
       },
       false},
  };
  std::size_t checks = 0, violations = 0;
  std::string first;
  for (const auto& cg : desk_corpus()) {
    const auto& g = cg.graph;
    const bool connected = g.order() > 0 && is_connected(g);
    for (const auto& gen : gens) {
      if (gen.needs_connected && !connected) continue;
      const BagFamily base(gen.make(g));
      for (std::size_t r = 0; r < kRelabelings; ++r) {
        const auto perm = permutation(g.order(), 104729 * r + g.order() + 1);
        ++checks;
        if (relabel(base, perm) != BagFamily(gen.make(relabel(g, perm)))) {
          ++violations;
          if (first.empty()) first = " [" + gen.name + " on " + cg.name + "]";
        }
      }
    }
  }
  std::ostringstream d;
  d << checks << " relabelings checked, " << violations << " violations" << first;
  return {violations == 0, d.str()};
}

Outcome bounded_treewidth() {
  std::size_t graphs = 0, pairs = 0, wrong = 0;
  std::string first;
  for (const auto& cg : desk_corpus()) {
    const auto& g = cg.graph;
    if (g.order() > 8 || !treewidth_at_most_two(g)) continue;
    ++graphs;
    const auto perm = permutation(g.order(), 4099 + g.order());
    for (const auto& h : {relabel(g, perm), relabel(perturb(g, 77 + g.size()), perm)}) {
      ++pairs;
      const auto truth = brute_force_iso(g, h).verdict;
      const auto got = supplied_subsets(g, h, 3).verdict;
      if (got != truth) {
        ++wrong;
        if (first.empty()) first = " [" + cg.name + ": " + to_string(got) + " vs brute " + to_string(truth) + "]";
      }
    }
  }
  std::ostringstream d;
  d << graphs << " graphs, " << pairs << " pairs, " << wrong << " disagreements" << first;
  return {wrong == 0 && graphs > 0, d.str()};
}

struct Criterion {
  const char* title;
  Outcome (*run)();
  double limit;  // seconds, 0 when unbounded
};

const Criterion kTable[kCriteria] = {
    {"(3,10)-path: ctdw 5 with 100 optimal connected roots", path_root_count, kLimitPathCount},
    {"C6: ctdw <= 2 and cstw >= 3", cycle_separation, kLimitCycle},
    {"(3,6)-comb: cstw <= 3 and ctdw >= 3", comb_separation, kLimitComb},
    {"(3,6)-path: ctdw <= 5 and rtdw >= 3", rooted_separation, kLimitRooted},
    {"2k-linked pairs share a bag in every width-k strong decomposition", shared_bag_property, 0},
    {"splitter refinement equals naive refinement", refinement_equivalence, 0},
    {"solvers agree with brute force", solver_agreement, 0},
    {"block degree bound in the degree reduction", degree_bound, 0},
    {"bag and root families commute with relabeling", family_invariance, 0},
    {"all 3-subsets decide treewidth-2 graphs", bounded_treewidth, 0},
};

}  // namespace

CriterionResult run_criterion(int id) {
  if (id < 1 || id > kCriteria) throw Error(ErrorCode::BadParams, "no criterion " + std::to_string(id));
  const auto& c = kTable[id - 1];
  CriterionResult r;
  r.id = id;
  r.title = c.title;
  const auto t0 = Clock::now();
  try {
    auto o = c.run();
    r.passed = o.passed;
    r.detail = std::move(o.detail);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = since(t0);
  if (c.limit > 0 && r.seconds >= c.limit) {
    r.passed = false;
    r.detail += "; over the " + std::to_string(static_cast<int>(c.limit)) + "s limit";
  }
  return r;
}

std::vector<CriterionResult> run(const std::vector<int>& ids,
                                 const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<int> todo = ids;
  if (todo.empty())
    for (int i = 1; i <= kCriteria; ++i) todo.push_back(i);
  std::vector<CriterionResult> out;
  for (int id : todo) {
    out.push_back(run_criterion(id));
    if (on_result) on_result(out.back());
  }
  return out;
}

}  // namespace tdiso::selftest
