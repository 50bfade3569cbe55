// Serial reference kernels against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include <multex/search.hpp>
#include <multex/verify.hpp>

#include <omp.h>

namespace {

void BM_ClaimC4Serial(benchmark::State& state)
{
    const bool deep = state.range(0) != 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(multex::claim_c4_enumeration_serial(4, deep));
}

void BM_ClaimC4Parallel(benchmark::State& state)
{
    const bool deep = state.range(0) != 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(multex::claim_c4_enumeration(4, deep));
    state.counters["threads"] = omp_get_max_threads();
}

void BM_Search(benchmark::State& state)
{
    multex::SearchConfig cfg;
    cfg.threads = static_cast<int>(state.range(0));
    cfg.circulant_seeds = false;
    for (auto _ : state) {
        const auto r = multex::exact_ex_pi(6, 4, 13, cfg);
        benchmark::DoNotOptimize(r.lower);
        state.counters["nodes"] = static_cast<double>(r.stats.nodes);
    }
}

void BM_SearchN7(benchmark::State& state)
{
    multex::SearchConfig cfg;
    cfg.threads = static_cast<int>(state.range(0));
    for (auto _ : state) {
        const auto r = multex::exact_ex_pi(7, 5, 34, cfg);
        benchmark::DoNotOptimize(r.lower);
        state.counters["nodes"] = static_cast<double>(r.stats.nodes);
    }
}

} // namespace

BENCHMARK(BM_ClaimC4Serial)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClaimC4Parallel)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Search)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SearchN7)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond)->Iterations(1);

BENCHMARK_MAIN();
