#pragma once

// Data-parallel marking kernels. Each has a serial twin in
// romanov::reference that tests and the benchmark compare against.

#include <cstdint>
#include <span>

#include "romanov/arith.hpp"
#include "romanov/bitset.hpp"

namespace romanov {

// first, first + step, ..., last (inclusive; last - first divisible by step).
struct Progression {
    std::uint64_t first = 0;
    std::uint64_t last = 0;
    std::uint64_t step = 1;
};

// Sets bit c of `out` for every c = 2^a + b <= x with a >= 1 and b drawn from
// one of the progressions. `out` must hold at least x + 1 bits. The output
// range is split into word-aligned chunks, one writer per chunk.
void mark_power_shifts(BitArray& out, std::span<const Progression> progressions, std::uint64_t x);

// Sets bit n of `out` for every n <= limit such that n - 2^k is prime for
// some k >= k_min. Parallel over chunks of n.
void mark_prime_plus_power(BitArray& out, const OddPrimeBitmap& primes, unsigned k_min,
                           std::uint64_t limit);

int max_threads();

namespace reference {

// Plain Eratosthenes over a byte vector.
OddPrimeBitmap sieve(std::uint64_t limit);

// Double loop over (a, b).
void mark_power_shifts(BitArray& out, std::span<const Progression> progressions, std::uint64_t x);

// Loop over (p, k) marking p + 2^k.
void mark_prime_plus_power(BitArray& out, const OddPrimeBitmap& primes, unsigned k_min,
                           std::uint64_t limit);

}  // namespace reference
}  // namespace romanov
