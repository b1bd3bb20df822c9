#include "romanov/sumset.hpp"

#include <algorithm>
#include <limits>

#include "romanov/errors.hpp"

namespace romanov {

namespace {

void check_enumerable(std::uint64_t x, std::uint64_t cap)
{
    if (x < 1)
        throw DomainError("enumeration needs x >= 1");
    if (x > cap)
        throw CapacityError("x = " + std::to_string(x) + " exceeds the enumeration cap " +
                            std::to_string(cap));
}

bool fits_u64(const BigInt& v) { return mpz_sizeinbase(v.get_mpz_t(), 2) <= 63; }

}  // namespace

std::vector<Progression> block_progressions(const BlockSet& set, std::uint64_t x,
                                            std::size_t from_t, std::size_t to_t)
{
    std::vector<Progression> out;
    for (std::size_t t = from_t; t <= to_t; ++t) {
        const Block& b = set.block(t);
        if (b.lo_exponent >= 63 || !fits_u64(b.modulus))
            continue;
        const std::uint64_t lo = std::uint64_t{1} << b.lo_exponent;
        const std::uint64_t d = b.modulus.get_ui();
        const std::uint64_t upper =
            b.hi_exponent >= 63 ? x : std::min(x, (std::uint64_t{1} << b.hi_exponent) - 1);
        if (lo > upper)
            continue;
        const std::uint64_t first = (lo + d - 1) / d * d;
        if (first > upper)
            continue;
        out.push_back({first, first + (upper - first) / d * d, d});
    }
    return out;
}

Enumeration enumerate_C(std::uint64_t x, const BlockSet& set, std::uint64_t cap)
{
    check_enumerable(x, cap);
    const std::size_t j = block_index(BigInt(static_cast<unsigned long>(x)), set.schedule());
    Enumeration e;
    e.x = x;
    e.members = BitArray(x + 1);
    if (j > 0) {
        const auto progs = block_progressions(set, x, 1, j);
        mark_power_shifts(e.members, progs, x);
    }
    e.count = e.members.count();
    return e;
}

SumsetReport split_S1_S2(std::uint64_t x, const BlockSet& set, std::uint64_t cap)
{
    check_enumerable(x, cap);
    SumsetReport r;
    r.x = x;
    r.j = block_index(BigInt(static_cast<unsigned long>(x)), set.schedule());
    r.sqrt_check = 2 * r.j < 64 && (std::uint64_t{1} << (2 * r.j)) <= x;
    if (r.j == 0)
        return r;

    BitArray top(x + 1);
    BitArray rest(x + 1);
    mark_power_shifts(top, block_progressions(set, x, r.j, r.j), x);
    if (r.j > 1)
        mark_power_shifts(rest, block_progressions(set, x, 1, r.j - 1), x);

    for (std::uint64_t w = 0; w < top.word_count(); ++w) {
        const std::uint64_t a = top.word(w);
        const std::uint64_t b = rest.word(w);
        r.s1_count += static_cast<std::uint64_t>(std::popcount(a));
        r.s1_overlap += static_cast<std::uint64_t>(std::popcount(a & b));
        r.s2_count += static_cast<std::uint64_t>(std::popcount(b & ~a));
    }
    r.c_count = r.s1_count + r.s2_count;
    r.density = static_cast<double>(r.c_count) / static_cast<double>(x);

    // c = 2^a + b with d_j | b and d_j odd, so gcd(c, d_j) = 1.
    const auto primes = set.primes().first_odd(r.j);
    top.for_each_set([&](std::uint64_t c) {
        for (auto p : primes) {
            if (c % p == 0) {
                ++r.s1_coprime_violations;
                return;
            }
        }
    });
    return r;
}

S1Bound s1_bound_at(const BigInt& x, std::size_t j, const PrimeTable& table)
{
    if (x < 0)
        throw DomainError("sieve bound needs x >= 0");
    if (j == 0)
        return {ExactRational(x), x};
    S1Bound out{ExactRational(x) * mertens_product(j, table) + ExactRational(pow2(j)), std::nullopt};
    if (j <= kLegendreMaxPrimes)
        out.legendre = legendre_count(x, table.first_odd(j));
    return out;
}

S1Bound s1_bound(const BigInt& x, const BlockSet& set, const PrimeTable& table)
{
    const std::size_t j = x < 1 ? 0 : block_index(x, set.schedule());
    return s1_bound_at(x, j, table);
}

ExactRational s2_bound(const BigInt& x, const BlockSet& set, const PrimeTable& table)
{
    const std::size_t j = block_index(x, set.schedule());
    if (j < 2)
        throw InapplicableError("S2 bound needs block index >= 2, x = " + x.get_str() +
                                " has j = " + std::to_string(j));
    const std::size_t k = j - 1;
    const ExactRational sieve = ExactRational(x) * mertens_product(k, table) + ExactRational(pow2(k));
    const BigInt small_b_pairs = set.block(k).lo() * static_cast<unsigned long>(floor_log2(x));
    return sieve + ExactRational(small_b_pairs);
}

SumsetReport c_upper_report(std::uint64_t x, const BlockSet& set, const PrimeTable& table,
                            std::uint64_t cap)
{
    SumsetReport r = split_S1_S2(x, set, cap);
    if (r.j < 2)
        throw InapplicableError("bound report needs block index >= 2, x = " + std::to_string(x) +
                                " has j = " + std::to_string(r.j));
    const BigInt bx(static_cast<unsigned long>(x));
    S1Bound s1 = s1_bound(bx, set, table);
    r.s1_bound = s1.bound;
    r.s1_legendre = s1.legendre;
    r.s2_bound = s2_bound(bx, set, table);
    r.c_bound = *r.s1_bound + *r.s2_bound;
    return r;
}

std::vector<RatioPoint> ratio_scan(std::span<const std::uint64_t> x_grid, const BlockSet& set,
                                   std::uint64_t cap)
{
    std::vector<RatioPoint> out;
    if (x_grid.empty())
        return out;
    for (std::size_t i = 1; i < x_grid.size(); ++i) {
        if (x_grid[i] <= x_grid[i - 1])
            throw DomainError("ratio scan grid must be strictly ascending");
    }
    const Enumeration e = enumerate_C(x_grid.back(), set, cap);
    for (auto x : x_grid) {
        check_enumerable(x, cap);
        RatioPoint p;
        p.x = x;
        p.b_count = count_B(BigInt(static_cast<unsigned long>(x)), set);
        p.c_count = e.members.count_through(x);
        if (p.b_count > 0)
            p.ratio = ExactRational(BigInt(static_cast<unsigned long>(p.c_count)), p.b_count);
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace romanov
