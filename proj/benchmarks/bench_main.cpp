#include <benchmark/benchmark.h>

#include "specgraph/centrality.hpp"
#include "specgraph/clustering.hpp"
#include "specgraph/concentration.hpp"
#include "specgraph/graph.hpp"
#include "specgraph/linalg.hpp"
#include "specgraph/rng.hpp"

using namespace specgraph;

namespace {

ProbabilityModel two_block(int n) {
  return build_probability_matrix(SbmSpec::equal_blocks(n, 2, 0.3, 0.1));
}

void BM_SampleAdjacency(benchmark::State& state) {
  const ProbabilityModel m = two_block(static_cast<int>(state.range(0)));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_adjacency(m, seed++));
}
BENCHMARK(BM_SampleAdjacency)->Arg(200)->Arg(800);

void BM_TopKEigens(benchmark::State& state) {
  const AdjacencyMatrix A = sample_adjacency(two_block(static_cast<int>(state.range(0))), 1);
  for (auto _ : state) benchmark::DoNotOptimize(top_k_eigens(A.A, 2));
}
BENCHMARK(BM_TopKEigens)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_DeviationQuantile(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(deviation_quantile(39.7, 200, 0.05));
}
BENCHMARK(BM_DeviationQuantile);

void BM_GrassmannDistance(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const OrthonormalBasis U = top_k_eigens(sample_adjacency(two_block(n), 1).A, 2).first;
  const OrthonormalBasis V = top_k_eigens(sample_adjacency(two_block(n), 2).A, 2).first;
  for (auto _ : state) benchmark::DoNotOptimize(grassmann_distance(U, V));
}
BENCHMARK(BM_GrassmannDistance)->Arg(200)->Arg(800);

void BM_Katz(benchmark::State& state) {
  const AdjacencyMatrix A = sample_adjacency(two_block(static_cast<int>(state.range(0))), 1);
  const double beta = 1.0 / (4.0 * spectral_radius(A.A));
  for (auto _ : state) benchmark::DoNotOptimize(katz_centrality(A.A, beta));
}
BENCHMARK(BM_Katz)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_PermHamming(benchmark::State& state) {
  const int K = static_cast<int>(state.range(0));
  Rng rng(3);
  Labels g(2000), h(2000);
  for (std::size_t i = 0; i < g.size(); ++i) {
    g[i] = static_cast<int>(uniform01(rng) * K);
    h[i] = static_cast<int>(uniform01(rng) * K);
  }
  for (auto _ : state) benchmark::DoNotOptimize(perm_hamming_distance(g, h));
}
BENCHMARK(BM_PermHamming)->Arg(2)->Arg(6)->Arg(8)->Arg(20);

}  // namespace
BENCHMARK_MAIN();
