// Serial reference kernels against their OpenMP counterparts.
// Thread count is the benchmark argument; 0 leaves it to OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <vector>

#include "prodsq/parallel_kernels.hpp"

using namespace prodsq;

namespace {

const PrimeTable& table()
{
    static const PrimeTable t(1'000'000);
    return t;
}

constexpr u64 kScanHi = 2000;
constexpr u64 kDirect = 300;

void BM_ScanSerial(benchmark::State& state)
{
    for (auto _ : state) benchmark::DoNotOptimize(scan_serial(1, kScanHi, kDirect, table()));
    state.SetItemsProcessed(state.iterations() * kScanHi);
}

void BM_ScanParallel(benchmark::State& state)
{
    const int jobs = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(scan_parallel(1, kScanHi, kDirect, table(), jobs));
    state.SetItemsProcessed(state.iterations() * kScanHi);
}

void BM_OracleSweepSerial(benchmark::State& state)
{
    const auto primes = table().primes_in(2, 200);
    for (auto _ : state) benchmark::DoNotOptimize(alpha_oracle_sweep_serial(primes, 500));
}

void BM_OracleSweepParallel(benchmark::State& state)
{
    const auto primes = table().primes_in(2, 200);
    const int jobs = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(alpha_oracle_sweep_parallel(primes, 500, jobs));
}

}  // namespace

BENCHMARK(BM_ScanSerial)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanParallel)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleSweepSerial)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleSweepParallel)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
