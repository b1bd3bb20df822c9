#pragma once

// Exact enumeration of C = {2^a + b : a >= 1, b in B} up to x, its split by
// witness block, and the upper-bound chain for |C intersected with [1, x]|.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "romanov/bitset.hpp"
#include "romanov/construction.hpp"
#include "romanov/kernels.hpp"

namespace romanov {

inline constexpr std::uint64_t kDefaultEnumerationCap = 100'000'000;

struct Enumeration {
    std::uint64_t x = 0;
    std::uint64_t count = 0;
    BitArray members;  // bit c set iff c in C, c <= x
};

// CapacityError when x exceeds `cap` or the block set does not reach x.
Enumeration enumerate_C(std::uint64_t x, const BlockSet& set,
                        std::uint64_t cap = kDefaultEnumerationCap);

struct SumsetReport {
    std::uint64_t x = 0;
    std::size_t j = 0;
    std::uint64_t c_count = 0;
    // S1: some witness has b in B_j. S2: every witness has b outside B_j.
    std::uint64_t s1_count = 0;
    std::uint64_t s2_count = 0;
    // Members with witnesses both inside and outside B_j.
    std::uint64_t s1_overlap = 0;
    // S1 members sharing a factor with d_j. Always 0 unless something is broken.
    std::uint64_t s1_coprime_violations = 0;

    std::optional<BigInt> s1_legendre;  // legendre_count(x, p_1..p_j)
    std::optional<ExactRational> s1_bound;
    std::optional<ExactRational> s2_bound;
    std::optional<ExactRational> c_bound;
    double density = 0;
    bool sqrt_check = false;  // 2^j <= sqrt(x)

    bool partition_holds() const { return s1_count + s2_count == c_count; }
    bool s1_within_legendre() const { return !s1_legendre || BigInt(s1_count) <= *s1_legendre; }
    bool s1_within_bound() const { return !s1_bound || ExactRational(BigInt(s1_count)) <= *s1_bound; }
    bool s2_within_bound() const { return !s2_bound || ExactRational(BigInt(s2_count)) <= *s2_bound; }
    bool c_within_bound() const { return !c_bound || ExactRational(BigInt(c_count)) <= *c_bound; }

    friend bool operator==(const SumsetReport&, const SumsetReport&) = default;
};

// Exact fields only; bound fields stay empty.
SumsetReport split_S1_S2(std::uint64_t x, const BlockSet& set,
                         std::uint64_t cap = kDefaultEnumerationCap);

// The Legendre sum has 2^j terms; it is skipped above this many primes.
inline constexpr std::size_t kLegendreMaxPrimes = 20;

struct S1Bound {
    ExactRational bound;             // x * prod_{i<=j} (1 - 1/p_i) + 2^j
    std::optional<BigInt> legendre;  // exact count of c <= x coprime to d_j; empty when j > kLegendreMaxPrimes
};

// Level-j sieve bound at explicit j; j = 0 gives x with no sieve.
S1Bound s1_bound_at(const BigInt& x, std::size_t j, const PrimeTable& table);
S1Bound s1_bound(const BigInt& x, const BlockSet& set, const PrimeTable& table);

// [x * prod_{i<=j-1} (1 - 1/p_i) + 2^(j-1)] + G(j-1) * floor(log2 x), j >= 2.
ExactRational s2_bound(const BigInt& x, const BlockSet& set, const PrimeTable& table);

// split_S1_S2 plus every bound; InapplicableError for j < 2.
SumsetReport c_upper_report(std::uint64_t x, const BlockSet& set, const PrimeTable& table,
                            std::uint64_t cap = kDefaultEnumerationCap);

struct RatioPoint {
    std::uint64_t x = 0;
    BigInt b_count;
    std::uint64_t c_count = 0;
    std::optional<ExactRational> ratio;  // C(x)/B(x); empty while B(x) = 0

    friend bool operator==(const RatioPoint&, const RatioPoint&) = default;
};

// One enumeration at the largest grid point, then prefix counts.
// DomainError when the grid is not strictly ascending.
std::vector<RatioPoint> ratio_scan(std::span<const std::uint64_t> x_grid, const BlockSet& set,
                                   std::uint64_t cap = kDefaultEnumerationCap);

// Per-block progressions of B members in [1, x], split into block j and the rest.
std::vector<Progression> block_progressions(const BlockSet& set, std::uint64_t x,
                                            std::size_t from_t, std::size_t to_t);

}  // namespace romanov
