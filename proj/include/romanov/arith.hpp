#pragma once

// Exact arithmetic primitives: prime tables, odd primorials, the Legendre
// sieve, Chebyshev and Mertens evaluations, and logarithms of big integers.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "romanov/bitset.hpp"
#include "romanov/rational.hpp"

namespace romanov {

// Primality of every integer in [0, limit], one bit per odd number.
class OddPrimeBitmap {
public:
    OddPrimeBitmap() = default;
    // Parallel segmented sieve.
    explicit OddPrimeBitmap(std::uint64_t limit);

    std::uint64_t limit() const { return limit_; }

    bool is_prime(std::uint64_t n) const
    {
        if (n < 3)
            return n == 2;
        if ((n & 1) == 0 || n > limit_)
            return false;
        return bits_.test(n >> 1);
    }

    // Bit i stands for 2i+1; bit 0 (the number 1) is always clear.
    const BitArray& bits() const { return bits_; }

    static OddPrimeBitmap from_bits(std::uint64_t limit, BitArray bits);

private:
    std::uint64_t limit_ = 0;
    BitArray bits_;
};

// All primes up to a limit, with Chebyshev prefix sums over the odd ones.
// Odd primes are indexed from 1: p_1 = 3, p_2 = 5, ...
class PrimeTable {
public:
    explicit PrimeTable(std::uint64_t limit);

    std::uint64_t limit() const { return limit_; }
    std::span<const std::uint64_t> primes() const { return primes_; }
    std::size_t odd_count() const { return primes_.empty() ? 0 : primes_.size() - 1; }

    // p_i, 1-based; CapacityError when the table is too short.
    std::uint64_t odd_prime(std::size_t i) const;
    // p_1..p_j.
    std::span<const std::uint64_t> first_odd(std::size_t j) const;

    // theta_prefix()[i-1] = sum of log p over 3 <= p <= p_i.
    std::span<const double> theta_prefix() const { return theta_prefix_; }
    // theta(0) = 0.
    double theta(std::size_t j) const;

    bool contains(std::uint64_t n) const;

private:
    std::uint64_t limit_;
    std::vector<std::uint64_t> primes_;
    std::vector<double> theta_prefix_;
};

// DomainError when limit < 2.
PrimeTable sieve_primes(std::uint64_t limit);

// Smallest convenient table holding at least `count` odd primes.
PrimeTable table_with_odd_primes(std::size_t count);

// d_t = 3 * 5 * ... * p_t.
BigInt odd_primorial(std::size_t t, const PrimeTable& table);

struct ChebyshevCheck {
    std::size_t j = 0;
    double theta = 0;
    double bound = 0;
    bool holds = false;
};

// theta(p_j) against 2 j log j.
ChebyshevCheck check_chebyshev(std::size_t j, const PrimeTable& table);

// prod (1 - 1/p) over p_1..p_j, times 1/2 when include_two is set.
ExactRational mertens_product(std::size_t j, const PrimeTable& table, bool include_two = false);

// Doubles of the exact odd-prime products for j = 1..j_max, from one
// incremental exact fold.
std::vector<double> mertens_profile(std::size_t j_max, const PrimeTable& table);

struct SignedDivisor {
    BigInt divisor;
    int mobius = 1;
};

// All 2^k squarefree divisors of the product of k distinct primes, in
// subset-bitmask order: bit i of the index selects primes[i].
std::vector<SignedDivisor> squarefree_divisors_signed(std::span<const std::uint64_t> primes);

// #{1 <= c <= x : gcd(c, prod primes) = 1} as sum over divisors of mu(l) floor(x / l).
// Branches whose floor quotient is zero are pruned; the sum is otherwise the
// full signed divisor sum.
BigInt legendre_count(const BigInt& x, std::span<const std::uint64_t> primes);

// log2 x from the bit length and leading bits. DomainError for x <= 0.
double big_log2(const BigInt& x);
// Natural log through big_log2.
double big_ln(const BigInt& x);
// floor(log2 x) for x >= 1.
std::uint64_t floor_log2(const BigInt& x);

// Deterministic Miller-Rabin over the first thirteen prime bases.
bool is_prime_u64(std::uint64_t n);

BigInt pow2(std::uint64_t e);

}  // namespace romanov
