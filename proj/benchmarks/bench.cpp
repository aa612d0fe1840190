#include <benchmark/benchmark.h>

#include "plurality/spectral.hpp"
#include "plurality/voting.hpp"

using namespace plurality;

static void BM_RandomRegularGen(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::uint64_t seed = 1;
    for (auto _ : state) {
        Graph g = new_random_regular(n, 10, seed++);
        benchmark::DoNotOptimize(g.edge_count());
    }
}
BENCHMARK(BM_RandomRegularGen)->Arg(1000)->Arg(10000);

static void BM_VotingStep(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Graph g = new_random_regular(n, 10, 7);
    OpinionConfig cfg = place_opinions(g, {n / 2, n - n / 2}, Placement::random, 1);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        cfg.round = 0;
        OpinionConfig next = step(g, cfg, {Rule::two_sample, 1, false}, seed++);
        benchmark::DoNotOptimize(next.sizes[0]);
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_VotingStep)->Arg(1000)->Arg(100000);

static void BM_SecondEigenvalue(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Graph g = new_random_regular(n, 10, 7);
    EigenOptions opts;
    opts.dense_limit = n <= 500 ? 2000 : 0;  // force iterative above 500
    for (auto _ : state) {
        benchmark::DoNotOptimize(second_eigenvalue(g, opts));
    }
}
BENCHMARK(BM_SecondEigenvalue)->Arg(500)->Arg(5000);

BENCHMARK_MAIN();
