#include "romanov/kernels.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace romanov {

namespace {

constexpr std::uint64_t kChunkWords = 2048;  // 2^17 bits per chunk

std::vector<std::uint64_t> small_odd_primes(std::uint64_t upto)
{
    std::vector<char> composite(upto + 1, 0);
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 3; i <= upto; i += 2) {
        if (composite[i])
            continue;
        out.push_back(i);
        for (std::uint64_t m = i * i; m <= upto; m += 2 * i)
            composite[m] = 1;
    }
    return out;
}

std::uint64_t isqrt(std::uint64_t n)
{
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n)
        --r;
    while ((r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

}  // namespace

int max_threads()
{
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

OddPrimeBitmap::OddPrimeBitmap(std::uint64_t limit) : limit_(limit), bits_(limit / 2 + 1)
{
    const auto base = small_odd_primes(isqrt(limit));
    const std::uint64_t words = bits_.word_count();
    const auto chunks = static_cast<std::int64_t>((words + kChunkWords - 1) / kChunkWords);

#pragma omp parallel for schedule(dynamic)
    for (std::int64_t c = 0; c < chunks; ++c) {
        const std::uint64_t w0 = static_cast<std::uint64_t>(c) * kChunkWords;
        const std::uint64_t w1 = std::min(words, w0 + kChunkWords);
        for (std::uint64_t w = w0; w < w1; ++w)
            bits_.word(w) = ~std::uint64_t{0};
        // bit i <-> 2i + 1
        const std::uint64_t i_lo = w0 * 64;
        const std::uint64_t i_hi = w1 * 64;  // exclusive
        const std::uint64_t n_hi = 2 * (i_hi - 1) + 1;
        for (auto q : base) {
            if (q * q > n_hi)
                break;
            // First odd multiple of q that is >= max(q^2, 2 i_lo + 1).
            const std::uint64_t n_lo = 2 * i_lo + 1;
            std::uint64_t m = std::max(q * q, (n_lo + q - 1) / q * q);
            if ((m & 1) == 0)
                m += q;
            for (std::uint64_t i = m >> 1; i < i_hi; i += q)
                bits_.word(i >> 6) &= ~(std::uint64_t{1} << (i & 63));
        }
        if (c == 0)
            bits_.word(0) &= ~std::uint64_t{1};  // 1 is not prime
        // Clear anything past the limit.
        for (std::uint64_t w = w0; w < w1; ++w) {
            if (2 * (w * 64 + 63) + 1 <= limit)
                continue;
            for (unsigned b = 0; b < 64; ++b) {
                if (2 * (w * 64 + b) + 1 > limit)
                    bits_.word(w) &= ~(std::uint64_t{1} << b);
            }
        }
    }
}

void mark_power_shifts(BitArray& out, std::span<const Progression> progressions, std::uint64_t x)
{
    const std::uint64_t words = std::min(out.word_count(), x / 64 + 1);
    const auto chunks = static_cast<std::int64_t>((words + kChunkWords - 1) / kChunkWords);

#pragma omp parallel for schedule(dynamic)
    for (std::int64_t c = 0; c < chunks; ++c) {
        const std::uint64_t lo = static_cast<std::uint64_t>(c) * kChunkWords * 64;
        const std::uint64_t hi = std::min(x, lo + kChunkWords * 64 - 1);
        for (unsigned a = 1; a < 64 && (std::uint64_t{1} << a) < hi; ++a) {
            const std::uint64_t shift = std::uint64_t{1} << a;
            for (const auto& pr : progressions) {
                // b in [lo - shift, hi - shift], clipped to the progression.
                const std::uint64_t b_max = std::min(pr.last, hi - shift);
                if (b_max < pr.first)
                    continue;
                std::uint64_t b = pr.first;
                if (lo > shift + pr.first)
                    b += (lo - shift - pr.first + pr.step - 1) / pr.step * pr.step;
                for (; b <= b_max; b += pr.step)
                    out.set(b + shift);
            }
        }
    }
}

void mark_prime_plus_power(BitArray& out, const OddPrimeBitmap& primes, unsigned k_min,
                           std::uint64_t limit)
{
    const std::uint64_t words = std::min(out.word_count(), limit / 64 + 1);
    const auto chunks = static_cast<std::int64_t>((words + kChunkWords - 1) / kChunkWords);
    const BitArray& odd = primes.bits();

#pragma omp parallel for schedule(dynamic)
    for (std::int64_t c = 0; c < chunks; ++c) {
        const std::uint64_t lo = static_cast<std::uint64_t>(c) * kChunkWords * 64;
        const std::uint64_t hi = std::min(limit, lo + kChunkWords * 64 - 1);
        for (unsigned k = k_min; k < 64 && (std::uint64_t{1} << k) < hi; ++k) {
            const std::uint64_t shift = std::uint64_t{1} << k;
            if (lo <= 2 + shift && 2 + shift <= hi)
                out.set(2 + shift);
            // Odd p in [lo - shift, hi - shift] is bit (p - 1) / 2 of the bitmap.
            const std::uint64_t p_lo = lo > shift ? lo - shift : 0;
            const std::uint64_t p_hi = std::min(hi - shift, primes.limit());
            if (p_hi < 3)
                continue;
            const std::uint64_t i_lo = p_lo / 2;  // smallest index with 2i + 1 >= p_lo
            const std::uint64_t i_hi = (p_hi - 1) / 2;
            for (std::uint64_t w = i_lo >> 6; w <= i_hi >> 6; ++w) {
                std::uint64_t bits = odd.word(w);
                if (w == i_lo >> 6)
                    bits &= ~std::uint64_t{0} << (i_lo & 63);
                if (w == i_hi >> 6 && (i_hi & 63) != 63)
                    bits &= (std::uint64_t{1} << ((i_hi & 63) + 1)) - 1;
                while (bits) {
                    const std::uint64_t i = (w << 6) + static_cast<std::uint64_t>(std::countr_zero(bits));
                    out.set(2 * i + 1 + shift);
                    bits &= bits - 1;
                }
            }
        }
    }
}

namespace reference {

OddPrimeBitmap sieve(std::uint64_t limit)
{
    std::vector<char> composite(limit + 1, 0);
    BitArray bits(limit / 2 + 1);
    for (std::uint64_t n = 3; n <= limit; n += 2) {
        if (composite[n])
            continue;
        bits.set(n >> 1);
        for (std::uint64_t m = n * n; m <= limit; m += 2 * n)
            composite[m] = 1;
    }
    return OddPrimeBitmap::from_bits(limit, std::move(bits));
}

void mark_power_shifts(BitArray& out, std::span<const Progression> progressions, std::uint64_t x)
{
    for (unsigned a = 1; a < 64 && (std::uint64_t{1} << a) < x; ++a) {
        const std::uint64_t shift = std::uint64_t{1} << a;
        for (const auto& pr : progressions) {
            for (std::uint64_t b = pr.first; b <= pr.last && b + shift <= x; b += pr.step)
                out.set(b + shift);
        }
    }
}

void mark_prime_plus_power(BitArray& out, const OddPrimeBitmap& primes, unsigned k_min,
                           std::uint64_t limit)
{
    for (std::uint64_t p = 2; p <= limit; ++p) {
        if (!primes.is_prime(p))
            continue;
        for (unsigned k = k_min; k < 64 && p + (std::uint64_t{1} << k) <= limit; ++k)
            out.set(p + (std::uint64_t{1} << k));
    }
}

}  // namespace reference
}  // namespace romanov
