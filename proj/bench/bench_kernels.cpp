// Serial reference kernels against their parallel counterparts.

#include <benchmark/benchmark.h>

#include "romanov/kernels.hpp"
#include "romanov/sumset.hpp"

using namespace romanov;

namespace {

const BlockSet& poly_blocks()
{
    static const BlockSet set(GrowthSchedule::polynomial(), 5);
    return set;
}

void BM_SieveParallel(benchmark::State& state)
{
    const auto limit = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(OddPrimeBitmap(limit));
    state.counters["threads"] = max_threads();
}

void BM_SieveSerial(benchmark::State& state)
{
    const auto limit = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(reference::sieve(limit));
}

template <bool Parallel>
void BM_PowerShifts(benchmark::State& state)
{
    const auto x = static_cast<std::uint64_t>(state.range(0));
    const auto progs = block_progressions(poly_blocks(), x, 1, block_index(BigInt(static_cast<unsigned long>(x)),
                                                                           poly_blocks().schedule()));
    for (auto _ : state) {
        BitArray out(x + 1);
        if constexpr (Parallel)
            mark_power_shifts(out, progs, x);
        else
            reference::mark_power_shifts(out, progs, x);
        benchmark::DoNotOptimize(out.count());
    }
}

template <bool Parallel>
void BM_PrimePlusPower(benchmark::State& state)
{
    const auto limit = static_cast<std::uint64_t>(state.range(0));
    const OddPrimeBitmap primes(limit);
    for (auto _ : state) {
        BitArray out(limit + 1);
        if constexpr (Parallel)
            mark_prime_plus_power(out, primes, 1, limit);
        else
            reference::mark_prime_plus_power(out, primes, 1, limit);
        benchmark::DoNotOptimize(out.count());
    }
}

}  // namespace

BENCHMARK(BM_SieveParallel)->Arg(1 << 20)->Arg(1 << 24)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SieveSerial)->Arg(1 << 20)->Arg(1 << 24)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PowerShifts<true>)->Arg(1'000'000)->Arg(10'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PowerShifts<false>)->Arg(1'000'000)->Arg(10'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PrimePlusPower<true>)->Arg(1'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PrimePlusPower<false>)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
