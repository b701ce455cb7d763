// Serial reference vs OpenMP kernels. Arguments: components n, max state M.

#include <benchmark/benchmark.h>

#include "mscs/kernels.hpp"
#include "mscs/lattice.hpp"
#include "mscs/structure.hpp"

namespace {

using namespace mscs;

StructureFunction workload(std::size_t n) {
  // koon(2; series(c1, c2), parallel(c3, ..., cn), c1): mixes all node kinds.
  std::vector<StructureExpr> rest;
  for (std::size_t i = 2; i < n; ++i) rest.push_back(StructureExpr::component(i));
  StructureExpr tail = rest.size() == 1 ? rest.front() : StructureExpr::parallel(rest);
  auto e = StructureExpr::k_out_of_n(
      2, {StructureExpr::series({StructureExpr::component(0), StructureExpr::component(1)}),
          std::move(tail), StructureExpr::component(0)});
  return StructureFunction::from_expr(e, n);
}

std::vector<std::vector<double>> uniform_pmfs(std::size_t n, Level m) {
  return std::vector<std::vector<double>>(n, std::vector<double>(m + 1, 1.0 / (m + 1)));
}

template <auto Kernel>
void BM_tabulate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto m = static_cast<Level>(state.range(1));
  const LatticeIndexer lattice(n, m);
  const auto phi = workload(n);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(phi, lattice));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(lattice.size()));
}

template <auto Kernel>
void BM_upset_min(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto m = static_cast<Level>(state.range(1));
  const LatticeIndexer lattice(n, m);
  const auto table = kernels::tabulate_parallel(workload(n), lattice);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(table, lattice));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(lattice.size()));
}

template <auto Kernel>
void BM_distribution(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto m = static_cast<Level>(state.range(1));
  const LatticeIndexer lattice(n, m);
  const auto phi = workload(n);
  const auto pmfs = uniform_pmfs(n, m);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(phi, lattice, pmfs));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(lattice.size()));
}

void sizes(benchmark::internal::Benchmark* b) {
  b->Args({6, 4})->Args({8, 4})->Args({10, 3})->Unit(benchmark::kMillisecond)->UseRealTime();
}

}  // namespace

BENCHMARK(BM_tabulate<kernels::tabulate_serial>)->Apply(sizes);
BENCHMARK(BM_tabulate<kernels::tabulate_parallel>)->Apply(sizes);
BENCHMARK(BM_upset_min<kernels::upset_min_serial>)->Apply(sizes);
BENCHMARK(BM_upset_min<kernels::upset_min_parallel>)->Apply(sizes);
BENCHMARK(BM_distribution<kernels::accumulate_distribution_serial>)->Apply(sizes);
BENCHMARK(BM_distribution<kernels::accumulate_distribution_parallel>)->Apply(sizes);

BENCHMARK_MAIN();
