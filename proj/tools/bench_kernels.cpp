// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <vector>

#include "pcnres/generators.hpp"
#include "pcnres/kernels.hpp"

using namespace pcnres;

namespace {

const PcnGraph& graph(std::size_t n) {
    static std::vector<std::pair<std::size_t, PcnGraph>> cache;
    for (const auto& [size, g] : cache)
        if (size == n) return g;
    cache.emplace_back(n, barabasi_albert(n, 3, 1));
    return cache.back().second;
}

template <Exec E>
void BM_Betweenness(benchmark::State& state) {
    const auto& g = graph(static_cast<std::size_t>(state.range(0))).simple();
    for (auto _ : state) benchmark::DoNotOptimize(kernels::betweenness(g, E));
}

template <Exec E>
void BM_AllPairsDistances(benchmark::State& state) {
    const auto& g = graph(static_cast<std::size_t>(state.range(0))).simple();
    for (auto _ : state) benchmark::DoNotOptimize(kernels::all_pairs_distances(g, E));
}

template <Exec E>
void BM_ShiftedMatvec(benchmark::State& state) {
    const auto& g = graph(static_cast<std::size_t>(state.range(0))).simple();
    std::vector<double> x(g.node_count(), 1.0), y(g.node_count());
    for (auto _ : state) {
        kernels::shifted_matvec(g, true, x, y, E);
        benchmark::DoNotOptimize(y.data());
    }
}

template <Exec E>
void BM_FailureTotals(benchmark::State& state) {
    const auto& g = graph(static_cast<std::size_t>(state.range(0))).simple();
    const std::vector<std::size_t> failures{1, 10, 50};
    for (auto _ : state) benchmark::DoNotOptimize(kernels::failure_component_totals(g, failures, 100, 7, E));
}

}  // namespace

BENCHMARK(BM_Betweenness<Exec::serial>)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Betweenness<Exec::parallel>)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AllPairsDistances<Exec::serial>)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AllPairsDistances<Exec::parallel>)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ShiftedMatvec<Exec::serial>)->Arg(2000)->Arg(20000);
BENCHMARK(BM_ShiftedMatvec<Exec::parallel>)->Arg(2000)->Arg(20000);
BENCHMARK(BM_FailureTotals<Exec::serial>)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FailureTotals<Exec::parallel>)->Arg(2000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
