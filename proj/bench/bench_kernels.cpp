// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "pdist/final_partition.hpp"
#include "pdist/metrics.hpp"
#include "pdist/oracle.hpp"
#include "pdist/regularity.hpp"
#include "pdist/signature.hpp"

using namespace pdist;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) == 0 ? Exec::serial : Exec::parallel; }

void BM_UpperCut(benchmark::State& state) {
  const int n = static_cast<int>(state.range(1));
  const auto r = random_weighted_graph(n, 1), s = random_weighted_graph(n, 2);
  std::vector<double> diff(r.data().size());
  for (std::size_t k = 0; k < diff.size(); ++k) diff[k] = r.data()[k] - s.data()[k];
  for (auto _ : state)
    benchmark::DoNotOptimize(exec_of(state) == Exec::serial ? upper_cut_serial(diff, n) : upper_cut_parallel(diff, n));
}
BENCHMARK(BM_UpperCut)->ArgsProduct({{0, 1}, {12, 16}});

void BM_FullCut(benchmark::State& state) {
  const int n = static_cast<int>(state.range(1));
  const Graph g = random_graph(n, 0.5, 3);
  const auto d = deviation_matrix(g, canonical_equipartition(n, 3), DiagonalMode::exclude);
  for (auto _ : state)
    benchmark::DoNotOptimize(exec_of(state) == Exec::serial ? full_cut_serial(d, n) : full_cut_parallel(d, n));
}
BENCHMARK(BM_FullCut)->ArgsProduct({{0, 1}, {12, 16}});

void BM_StarCut(benchmark::State& state) {
  const int n = static_cast<int>(state.range(1));
  const Graph g = random_graph(n, 0.5, 4);
  const Equipartition a = canonical_equipartition(n, 3);
  const auto d = deviation_matrix(g, a, DiagonalMode::exclude);
  for (auto _ : state)
    benchmark::DoNotOptimize(exec_of(state) == Exec::serial ? star_cut_serial(d, a) : star_cut_parallel(d, a));
}
BENCHMARK(BM_StarCut)->ArgsProduct({{0, 1}, {10, 12}});

void BM_MaxIndex(benchmark::State& state) {
  const Graph g = random_graph(12, 0.5, 5);
  for (auto _ : state) benchmark::DoNotOptimize(max_index(g, static_cast<int>(state.range(1)), exec_of(state)).value);
}
BENCHMARK(BM_MaxIndex)->ArgsProduct({{0, 1}, {3, 4}});

void BM_PropertyDistance(benchmark::State& state) {
  const Graph g = random_graph(static_cast<int>(state.range(1)), 0.5, 6);
  const PartitionProperty pi{3, {0.25, 0.5, 0.75}, {0.5, 0.75, 1.0}};
  for (auto _ : state) benchmark::DoNotOptimize(property_distance(g, pi, exec_of(state)));
}
BENCHMARK(BM_PropertyDistance)->ArgsProduct({{0, 1}, {9, 12}});

void BM_DistOracle(benchmark::State& state) {
  const Graph g = random_graph(7, 0.5, 7);
  const PropertySpec p = triangle_free_property();
  for (auto _ : state) benchmark::DoNotOptimize(dist_oracle(g, p, exec_of(state)));
}
BENCHMARK(BM_DistOracle)->Args({0, 7})->Args({1, 7});

void BM_ExactSlabMax(benchmark::State& state) {
  const Graph g = random_graph(10, 0.5, 8);
  for (auto _ : state) benchmark::DoNotOptimize(exact_slab_max(g, 3, 1.0 / 200, exec_of(state)).value);
}
BENCHMARK(BM_ExactSlabMax)->Args({0, 3})->Args({1, 3});

}  // namespace

BENCHMARK_MAIN();
