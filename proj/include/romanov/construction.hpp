#pragma once

// The block set B = union of B_t, where B_t holds the multiples of the odd
// primorial d_t inside [G(t), G(t+1)) and G(t) = 2^e(t).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "romanov/arith.hpp"
#include "romanov/rational.hpp"

namespace romanov {

inline constexpr std::uint64_t kDefaultBitBudget = 1'000'000;

enum class ScheduleKind { paper, polynomial, custom };

std::string to_string(ScheduleKind kind);

// Exponent function e(t) for t >= 1.
//   paper:      e(t) = 2^(t^2)
//   polynomial: e(t) = t^degree
//   custom:     explicit strictly increasing list e(1), e(2), ...
class GrowthSchedule {
public:
    static GrowthSchedule paper();
    static GrowthSchedule polynomial(unsigned degree = 2);
    static GrowthSchedule custom(std::vector<std::uint64_t> exponents);

    ScheduleKind kind() const { return kind_; }
    unsigned degree() const { return degree_; }
    const std::vector<std::uint64_t>& exponents() const { return exponents_; }

    // e(t), or nullopt once the value leaves 64 bits or the custom list ends.
    std::optional<std::uint64_t> try_exponent(std::size_t t) const;
    // e(t); CapacityError where try_exponent gives nullopt.
    std::uint64_t exponent(std::size_t t) const;

    friend bool operator==(const GrowthSchedule&, const GrowthSchedule&) = default;

private:
    GrowthSchedule(ScheduleKind kind, unsigned degree, std::vector<std::uint64_t> exponents)
        : kind_(kind), degree_(degree), exponents_(std::move(exponents)) {}

    ScheduleKind kind_;
    unsigned degree_ = 2;
    std::vector<std::uint64_t> exponents_;
};

// G(t) = 2^e(t). CapacityError past the schedule or when e(t) > max_bits.
BigInt grow(const GrowthSchedule& schedule, std::size_t t, std::uint64_t max_bits = kDefaultBitBudget);

// Largest j >= 1 with G(j) <= x, or 0 when x < G(1). DomainError for x < 1.
std::size_t block_index(const BigInt& x, const GrowthSchedule& schedule);

// One block B_t: multiples of `modulus` in [2^lo_exponent, 2^hi_exponent).
struct Block {
    std::size_t t = 0;
    BigInt modulus;
    std::uint64_t lo_exponent = 0;
    std::uint64_t hi_exponent = 0;

    BigInt lo() const { return pow2(lo_exponent); }
    BigInt hi() const { return pow2(hi_exponent); }
};

// Blocks 1..max_t of a schedule, immutable once built.
class BlockSet {
public:
    BlockSet(GrowthSchedule schedule, std::size_t max_t);

    // Materialized through block_index(x) (at least one block).
    static BlockSet covering(GrowthSchedule schedule, const BigInt& x);

    const GrowthSchedule& schedule() const { return schedule_; }
    std::size_t max_t() const { return blocks_.size(); }
    const std::vector<Block>& blocks() const { return blocks_; }
    // 1-based; CapacityError beyond max_t.
    const Block& block(std::size_t t) const;

    const PrimeTable& primes() const { return table_; }

private:
    GrowthSchedule schedule_;
    PrimeTable table_;
    std::vector<Block> blocks_;
};

// Membership in B. CapacityError when n lies beyond the materialized blocks.
bool b_member(const BigInt& n, const BlockSet& set);

// B(x) = |B intersected with [1, x]| by per-block floor counting.
BigInt count_B(const BigInt& x, const BlockSet& set);

// (x - G(j))/d_j + (G(j) - G(j-1))/d_{j-1} - 2, for j = block_index(x) >= 2.
ExactRational block_lower_bound(const BigInt& x, const BlockSet& set);

struct WindowCheck {
    std::size_t j = 0;
    double lower = 0;
    double upper = 0;
    bool holds = false;
};

// sqrt(log log x) < j <= 2 sqrt(log log x) / sqrt(log 2) for ScheduleKind::paper.
// Holds only approximately: it fails near the top of blocks j <= 4.
WindowCheck j_window_check(const BigInt& x, const GrowthSchedule& schedule);

struct BCountReport {
    BigInt x;
    std::size_t j = 0;
    BigInt b_count;
    std::optional<ExactRational> lower_bound;  // present when j >= 2
    std::uint64_t a_count = 0;               // floor(log2 x)
    ExactRational ratio_exact;               // a_count * b_count / x
    double conjecture_ratio = 0;

    bool lower_bound_holds() const { return !lower_bound || ExactRational(b_count) >= *lower_bound; }
    friend bool operator==(const BCountReport&, const BCountReport&) = default;
};

// A(log x / log 2) * B(x) / x with A the positive integers. DomainError for x < 2.
BCountReport conjecture_ratio(const BigInt& x, const BlockSet& set);

}  // namespace romanov
