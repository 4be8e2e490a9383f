// Serial reference vs OpenMP kernels.
//
//   bench_kernels --benchmark_filter=Sum
//   OMP_NUM_THREADS=8 bench_kernels

#include <benchmark/benchmark.h>

#include <memory>

#include "ramanujan/density.hpp"
#include "ramanujan/kernels.hpp"
#include "ramanujan/sieve_table.hpp"

namespace {

using namespace ramanujan;

const sieve::SieveTable& table() {
    static const auto t = sieve::build_table(sieve::kDefaultLimit);
    return t;
}

const sieve::MultFuncSpec& weight() {
    static const auto w = sieve::MultFuncSpec::threshold_weight(1000.0, 2.0, -2.0);
    return w;
}

void BM_SquarefreeSumSerial(benchmark::State& state) {
    const auto t = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::squarefree_sum_serial(weight(), t, 1, table()));
}
void BM_SquarefreeSumOmp(benchmark::State& state) {
    const auto t = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::squarefree_sum_omp(weight(), t, 1, table()));
}
BENCHMARK(BM_SquarefreeSumSerial)->Arg(1'000'000)->Arg(10'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SquarefreeSumOmp)->Arg(1'000'000)->Arg(10'000'000)->Unit(benchmark::kMillisecond);

void BM_LogIntegratedSerial(benchmark::State& state) {
    const auto x = static_cast<double>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::log_weighted_integrated_serial(weight(), x, 1, table()));
}
void BM_LogIntegratedOmp(benchmark::State& state) {
    const auto x = static_cast<double>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::log_weighted_integrated_omp(weight(), x, 1, table()));
}
BENCHMARK(BM_LogIntegratedSerial)->Arg(1'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LogIntegratedOmp)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

void BM_IdentitySweepSerial(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(
            kernels::hecke_identity_sweep_serial(static_cast<std::uint64_t>(state.range(0)), 1));
}
void BM_IdentitySweepOmp(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(
            kernels::hecke_identity_sweep_omp(static_cast<std::uint64_t>(state.range(0)), 1));
}
BENCHMARK(BM_IdentitySweepSerial)->Arg(100'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IdentitySweepOmp)->Arg(100'000)->Unit(benchmark::kMillisecond);

void BM_BuildTableSerial(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(
            sieve::build_table_serial(static_cast<std::uint64_t>(state.range(0))));
}
void BM_BuildTableParallel(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(
            sieve::build_table_parallel(static_cast<std::uint64_t>(state.range(0))));
}
BENCHMARK(BM_BuildTableSerial)->Arg(10'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BuildTableParallel)->Arg(10'000'000)->Unit(benchmark::kMillisecond);

density::FormFamily sato_tate_family(std::uint64_t coverage) {
    density::FormFamily f;
    for (std::uint64_t seed : {11u, 12u}) {
        forms::FormMeta m;
        m.label = "sato-tate-" + std::to_string(seed);
        m.source = std::make_shared<forms::SatoTateSource>(seed, coverage);
        f.members.push_back(m);
    }
    return f;
}

void BM_ExceptionalScanSerial(benchmark::State& state) {
    const auto X = static_cast<std::uint64_t>(state.range(0));
    const auto family = sato_tate_family(X);
    for (auto _ : state)
        benchmark::DoNotOptimize(density::exceptional_scan_serial(family, X, table()));
}
void BM_ExceptionalScanOmp(benchmark::State& state) {
    const auto X = static_cast<std::uint64_t>(state.range(0));
    const auto family = sato_tate_family(X);
    for (auto _ : state)
        benchmark::DoNotOptimize(density::exceptional_scan(family, X, table()));
}
BENCHMARK(BM_ExceptionalScanSerial)->Arg(1'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExceptionalScanOmp)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
