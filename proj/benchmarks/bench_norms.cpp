// Microbenchmarks for the hot paths: the exact branch-and-bound solver at
// growing row counts, the see-saw heuristic, and protocol sampling.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <vector>

#include "pmq/gisin.hpp"
#include "pmq/matrix.hpp"
#include "pmq/norms.hpp"
#include "pmq/rng.hpp"
#include "pmq/seesaw.hpp"

namespace {

pmq::WitnessMatrix random_pm1(int n, int m, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::int64_t> e(static_cast<std::size_t>(n) * m);
    for (auto& v : e) v = (rng() & 1) ? 1 : -1;
    return pmq::WitnessMatrix(n, m, std::move(e));
}

void BM_branch_bound_l2(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const pmq::WitnessMatrix M = random_pm1(n, n, 42);
    pmq::SolverConfig cfg;
    cfg.guess = std::max<std::int64_t>(
        static_cast<std::int64_t>(pmq::seesaw_l2(M, 8, 1).value), 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(pmq::lk_branch_bound(M, 2, cfg).value);
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_branch_bound_l2)->Arg(12)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_seesaw_40x40(benchmark::State& state) {
    const pmq::WitnessMatrix M = random_pm1(40, 40, 7);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(pmq::seesaw_l2(M, 8, ++seed).value);
    }
}
BENCHMARK(BM_seesaw_40x40)->Unit(benchmark::kMillisecond);

void BM_gisin_sampling(benchmark::State& state) {
    const long long n = state.range(0);
    const pmq::Vec3 a{0.6, 0.0, 0.8};
    const pmq::Vec3 b{0.0, 0.6, 0.8};
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(pmq::simulate_gg(a, b, n, ++seed).e_coarse);
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_gisin_sampling)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
