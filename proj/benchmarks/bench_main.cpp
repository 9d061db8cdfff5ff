#include <benchmark/benchmark.h>

#include "tdiso/connectivity.hpp"
#include "tdiso/decomposition.hpp"
#include "tdiso/families.hpp"
#include "tdiso/wl.hpp"

using namespace tdiso;

namespace {

Graph sparse_connected(std::size_t n, std::uint64_t seed) {
  auto g = random_graph(n, n + n / 2, seed);
  auto es = g.edges();
  for (Vertex v = 1; v < n; ++v) es.emplace_back(v - 1, v);
  return Graph::from_edges(n, es);
}

BagFamily singletons(std::size_t n) {
  std::vector<VertexSet> sets;
  for (Vertex v = 0; v < n; ++v) sets.push_back({v});
  return BagFamily(std::move(sets));
}

}  // namespace

// Should scale linearly in n + m.
void BM_MinimalTdd(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto g = sparse_connected(n, 1);
  std::vector<Vertex> root{0};
  for (auto _ : state) benchmark::DoNotOptimize(minimal_tdd(g, root));
  state.SetComplexityN(static_cast<benchmark::IterationCount>(n + g.size()));
}
BENCHMARK(BM_MinimalTdd)->RangeMultiplier(4)->Range(1 << 8, 1 << 16)->Complexity(benchmark::oN);

void BM_DisjointPaths(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto g = sparse_connected(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(max_disjoint_paths(g, 0, static_cast<Vertex>(n - 1)));
}
BENCHMARK(BM_DisjointPaths)->RangeMultiplier(4)->Range(1 << 8, 1 << 14);

void BM_KconPairs(benchmark::State& state) {
  auto g = kp_path(static_cast<std::size_t>(state.range(0)), 3).graph;
  for (auto _ : state) benchmark::DoNotOptimize(kcon_pairs(g, 3));
}
BENCHMARK(BM_KconPairs)->Arg(4)->Arg(8)->Arg(16);

template <bool Splitter>
void BM_Refinement(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto g = random_graph(n, 2 * n, 3);
  TupleUniverse u(n, singletons(n), 3);
  for (auto _ : state) {
    ColorTable table;
    auto init = initial_coloring(g, u, table);
    if constexpr (Splitter)
      benchmark::DoNotOptimize(stable_refinement(u, init, table));
    else
      benchmark::DoNotOptimize(naive_stable(u, init, table));
  }
  state.counters["tuples"] = static_cast<double>(u.size());
}
BENCHMARK(BM_Refinement<true>)->Name("BM_RefinementSplitter")->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Refinement<false>)->Name("BM_RefinementNaive")->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
