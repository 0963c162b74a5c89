#include <cmath>

#include <benchmark/benchmark.h>

#include "cdia/c4_graph.hpp"
#include "cdia/cycle_finder.hpp"
#include "cdia/generators.hpp"

namespace {

cdia::BipartiteSubgraph host(std::int64_t n, double c) {
  const auto m = static_cast<std::size_t>(std::llround(c * std::pow(static_cast<double>(n), 1.5)));
  return cdia::gen_random_bipartite(static_cast<std::size_t>(n / 2), static_cast<std::size_t>(n / 2), m, 1);
}

void BM_CountC4(benchmark::State& state) {
  const auto h = host(state.range(0), 0.8);
  for (auto _ : state) benchmark::DoNotOptimize(cdia::count_c4(h.graph, h.sides));
}
BENCHMARK(BM_CountC4)->Arg(200)->Arg(1000)->Arg(4000);

void BM_Codegree(benchmark::State& state) {
  const auto h = host(state.range(0), 0.8);
  const auto n = static_cast<cdia::Vertex>(h.graph.num_vertices());
  cdia::Vertex u = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cdia::codegree(h.graph, u, (u + 1) % n));
    u = (u + 7) % n;
  }
}
BENCHMARK(BM_Codegree)->Arg(200)->Arg(4000);

void BM_BuildGamma0(benchmark::State& state) {
  const auto h = host(state.range(0), 0.8);
  for (auto _ : state) benchmark::DoNotOptimize(cdia::C4Graph::build(h.graph, h.sides, 3.0).num_edges());
}
BENCHMARK(BM_BuildGamma0)->Arg(200)->Arg(1000);

void BM_FindCdia(benchmark::State& state) {
  const auto h = host(state.range(0), 0.6);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cdia::find_cdia(h.graph, cdia::ParameterSet::practical(), 3).witness.has_value());
  }
}
BENCHMARK(BM_FindCdia)->Arg(60)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
