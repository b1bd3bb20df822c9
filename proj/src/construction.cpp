#include "romanov/construction.hpp"

#include <cmath>
#include <numbers>

#include "romanov/errors.hpp"

namespace romanov {

std::string to_string(ScheduleKind kind)
{
    switch (kind) {
    case ScheduleKind::paper:
        return "paper";
    case ScheduleKind::polynomial:
        return "polynomial";
    case ScheduleKind::custom:
        return "custom";
    }
    return "unknown";
}

GrowthSchedule GrowthSchedule::paper() { return GrowthSchedule(ScheduleKind::paper, 2, {}); }

GrowthSchedule GrowthSchedule::polynomial(unsigned degree)
{
    if (degree == 0)
        throw DomainError("polynomial schedule needs degree >= 1");
    return GrowthSchedule(ScheduleKind::polynomial, degree, {});
}

GrowthSchedule GrowthSchedule::custom(std::vector<std::uint64_t> exponents)
{
    if (exponents.size() < 2)
        throw DomainError("custom schedule needs at least two exponents");
    if (exponents.front() < 1)
        throw DomainError("custom schedule needs e(1) >= 1");
    for (std::size_t i = 1; i < exponents.size(); ++i) {
        if (exponents[i] <= exponents[i - 1])
            throw DomainError("custom schedule exponents must be strictly increasing");
    }
    return GrowthSchedule(ScheduleKind::custom, 0, std::move(exponents));
}

std::optional<std::uint64_t> GrowthSchedule::try_exponent(std::size_t t) const
{
    if (t == 0)
        throw DomainError("schedule index starts at 1");
    switch (kind_) {
    case ScheduleKind::paper:
        if (t >= 8)
            return std::nullopt;
        return std::uint64_t{1} << (t * t);
    case ScheduleKind::polynomial: {
        unsigned __int128 v = 1;
        for (unsigned i = 0; i < degree_; ++i) {
            v *= t;
            if (v > UINT64_MAX)
                return std::nullopt;
        }
        return static_cast<std::uint64_t>(v);
    }
    case ScheduleKind::custom:
        if (t > exponents_.size())
            return std::nullopt;
        return exponents_[t - 1];
    }
    return std::nullopt;
}

std::uint64_t GrowthSchedule::exponent(std::size_t t) const
{
    auto e = try_exponent(t);
    if (!e)
        throw CapacityError(to_string(kind_) + " schedule has no exponent for t = " + std::to_string(t));
    return *e;
}

BigInt grow(const GrowthSchedule& schedule, std::size_t t, std::uint64_t max_bits)
{
    const std::uint64_t e = schedule.exponent(t);
    if (e > max_bits)
        throw CapacityError("G(" + std::to_string(t) + ") = 2^" + std::to_string(e) +
                            " exceeds the bit budget of " + std::to_string(max_bits));
    return pow2(e);
}

std::size_t block_index(const BigInt& x, const GrowthSchedule& schedule)
{
    if (x < 1)
        throw DomainError("block index needs x >= 1");
    const std::uint64_t bits = floor_log2(x);
    std::size_t j = 0;
    for (std::size_t t = 1;; ++t) {
        const auto e = schedule.try_exponent(t);
        if (!e) {
            if (schedule.kind() == ScheduleKind::custom)
                throw CapacityError("custom schedule exhausted before x = " + x.get_str());
            break;
        }
        if (*e > bits)
            break;
        j = t;
    }
    return j;
}

BlockSet::BlockSet(GrowthSchedule schedule, std::size_t max_t)
    : schedule_(std::move(schedule)), table_(table_with_odd_primes(max_t + 1))
{
    blocks_.reserve(max_t);
    BigInt d = 1;
    for (std::size_t t = 1; t <= max_t; ++t) {
        mpz_mul_ui(d.get_mpz_t(), d.get_mpz_t(), table_.odd_prime(t));
        blocks_.push_back(Block{t, d, schedule_.exponent(t), schedule_.exponent(t + 1)});
    }
}

BlockSet BlockSet::covering(GrowthSchedule schedule, const BigInt& x)
{
    const std::size_t j = block_index(x, schedule);
    return BlockSet(std::move(schedule), j < 1 ? 1 : j);
}

const Block& BlockSet::block(std::size_t t) const
{
    if (t == 0 || t > blocks_.size())
        throw CapacityError("block " + std::to_string(t) + " not materialized (max_t = " +
                            std::to_string(blocks_.size()) + ")");
    return blocks_[t - 1];
}

bool b_member(const BigInt& n, const BlockSet& set)
{
    if (n < 1)
        throw DomainError("membership needs n >= 1");
    const std::size_t t = block_index(n, set.schedule());
    if (t == 0)
        return false;
    return mpz_divisible_p(n.get_mpz_t(), set.block(t).modulus.get_mpz_t()) != 0;
}

BigInt count_B(const BigInt& x, const BlockSet& set)
{
    if (x < 0)
        throw DomainError("count needs x >= 0");
    if (x == 0)
        return 0;
    const std::size_t j = block_index(x, set.schedule());
    BigInt total = 0;
    BigInt q;
    for (std::size_t t = 1; t <= j; ++t) {
        const Block& b = set.block(t);
        // Multiples of d in [L, R]: floor(R/d) - floor((L-1)/d).
        const BigInt upper = t < j ? BigInt(b.hi() - 1) : x;
        mpz_fdiv_q(q.get_mpz_t(), upper.get_mpz_t(), b.modulus.get_mpz_t());
        total += q;
        const BigInt below = b.lo() - 1;
        mpz_fdiv_q(q.get_mpz_t(), below.get_mpz_t(), b.modulus.get_mpz_t());
        total -= q;
    }
    return total;
}

ExactRational block_lower_bound(const BigInt& x, const BlockSet& set)
{
    const std::size_t j = block_index(x, set.schedule());
    if (j < 2)
        throw InapplicableError("lower bound needs block index >= 2, x = " + x.get_str() +
                                " has j = " + std::to_string(j));
    const Block& cur = set.block(j);
    const Block& prev = set.block(j - 1);
    const BigInt g_j = cur.lo();
    const BigInt g_prev = prev.lo();
    return ExactRational(x - g_j, cur.modulus) + ExactRational(g_j - g_prev, prev.modulus) -
           ExactRational(2);
}

WindowCheck j_window_check(const BigInt& x, const GrowthSchedule& schedule)
{
    if (schedule.kind() != ScheduleKind::paper)
        throw InapplicableError("window check applies to ScheduleKind::paper only");
    if (x < 4)
        throw DomainError("window check needs x >= G(1) = 4");
    WindowCheck w;
    w.j = block_index(x, schedule);
    const double loglog = std::log(big_ln(x));
    w.lower = std::sqrt(loglog);
    w.upper = 2.0 * std::sqrt(loglog) / std::sqrt(std::numbers::ln2);
    const auto j = static_cast<double>(w.j);
    w.holds = w.lower < j && j <= w.upper;
    return w;
}

BCountReport conjecture_ratio(const BigInt& x, const BlockSet& set)
{
    if (x < 2)
        throw DomainError("conjecture ratio needs x >= 2");
    BCountReport r;
    r.x = x;
    r.j = block_index(x, set.schedule());
    r.b_count = count_B(x, set);
    if (r.j >= 2)
        r.lower_bound = block_lower_bound(x, set);
    r.a_count = floor_log2(x);
    r.ratio_exact = ExactRational(BigInt(r.b_count * static_cast<unsigned long>(r.a_count)), x);
    r.conjecture_ratio = r.ratio_exact.to_double();
    return r;
}

}  // namespace romanov
