#include "romanov/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "romanov/errors.hpp"
#include "romanov/kernels.hpp"

namespace romanov {

OddPrimeBitmap OddPrimeBitmap::from_bits(std::uint64_t limit, BitArray bits)
{
    OddPrimeBitmap b;
    b.limit_ = limit;
    b.bits_ = std::move(bits);
    return b;
}

PrimeTable::PrimeTable(std::uint64_t limit) : limit_(limit)
{
    if (limit < 2)
        throw DomainError("prime table needs limit >= 2, got " + std::to_string(limit));
    const OddPrimeBitmap bitmap(limit);
    primes_.push_back(2);
    bitmap.bits().for_each_set([&](std::uint64_t i) {
        const std::uint64_t n = 2 * i + 1;
        if (n <= limit)
            primes_.push_back(n);
    });
    theta_prefix_.reserve(primes_.size() - 1);
    long double acc = 0;
    for (std::size_t i = 1; i < primes_.size(); ++i) {
        acc += std::log(static_cast<long double>(primes_[i]));
        theta_prefix_.push_back(static_cast<double>(acc));
    }
}

std::uint64_t PrimeTable::odd_prime(std::size_t i) const
{
    if (i == 0 || i > odd_count())
        throw CapacityError("odd prime p_" + std::to_string(i) + " not in table (limit " +
                            std::to_string(limit_) + ")");
    return primes_[i];
}

std::span<const std::uint64_t> PrimeTable::first_odd(std::size_t j) const
{
    if (j > odd_count())
        throw CapacityError("table holds " + std::to_string(odd_count()) + " odd primes, need " +
                            std::to_string(j));
    return std::span<const std::uint64_t>(primes_).subspan(1, j);
}

double PrimeTable::theta(std::size_t j) const
{
    if (j == 0)
        return 0.0;
    odd_prime(j);
    return theta_prefix_[j - 1];
}

bool PrimeTable::contains(std::uint64_t n) const
{
    return std::binary_search(primes_.begin(), primes_.end(), n);
}

PrimeTable sieve_primes(std::uint64_t limit) { return PrimeTable(limit); }

PrimeTable table_with_odd_primes(std::size_t count)
{
    // p_n < n (ln n + ln ln n) for n >= 6.
    const double n = static_cast<double>(count + 1);
    auto limit = static_cast<std::uint64_t>(n < 6 ? 16 : n * (std::log(n) + std::log(std::log(n))) + 16);
    for (;;) {
        PrimeTable table(limit);
        if (table.odd_count() >= count)
            return table;
        limit *= 2;
    }
}

BigInt odd_primorial(std::size_t t, const PrimeTable& table)
{
    if (t == 0)
        throw DomainError("odd primorial needs t >= 1");
    BigInt d = 1;
    for (auto p : table.first_odd(t))
        mpz_mul_ui(d.get_mpz_t(), d.get_mpz_t(), p);
    return d;
}

ChebyshevCheck check_chebyshev(std::size_t j, const PrimeTable& table)
{
    if (j == 0)
        throw DomainError("Chebyshev check needs j >= 1");
    ChebyshevCheck c;
    c.j = j;
    c.theta = table.theta(j);
    c.bound = 2.0 * static_cast<double>(j) * std::log(static_cast<double>(j));
    c.holds = c.theta <= c.bound;
    return c;
}

ExactRational mertens_product(std::size_t j, const PrimeTable& table, bool include_two)
{
    if (j == 0)
        throw DomainError("Mertens product needs j >= 1");
    BigInt num = 1;
    BigInt den = 1;
    for (auto p : table.first_odd(j)) {
        mpz_mul_ui(num.get_mpz_t(), num.get_mpz_t(), p - 1);
        mpz_mul_ui(den.get_mpz_t(), den.get_mpz_t(), p);
    }
    if (include_two)
        den *= 2;
    return ExactRational(num, den);
}

std::vector<double> mertens_profile(std::size_t j_max, const PrimeTable& table)
{
    std::vector<double> out;
    out.reserve(j_max);
    mpq_class acc = 1;
    for (auto p : table.first_odd(j_max)) {
        acc *= mpq_class(p - 1, p);
        out.push_back(acc.get_d());
    }
    return out;
}

std::vector<SignedDivisor> squarefree_divisors_signed(std::span<const std::uint64_t> primes)
{
    const std::size_t k = primes.size();
    if (k > 30)
        throw CapacityError("divisor enumeration over " + std::to_string(k) + " primes");
    std::vector<std::uint64_t> sorted(primes.begin(), primes.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw DomainError("divisor enumeration needs distinct primes");

    std::vector<SignedDivisor> out;
    out.reserve(std::size_t{1} << k);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
        SignedDivisor d{1, 1};
        for (std::size_t i = 0; i < k; ++i) {
            if (mask >> i & 1) {
                mpz_mul_ui(d.divisor.get_mpz_t(), d.divisor.get_mpz_t(), primes[i]);
                d.mobius = -d.mobius;
            }
        }
        out.push_back(std::move(d));
    }
    return out;
}

namespace {

// Count of 1 <= c <= y coprime to primes[i..].
BigInt legendre_phi(const BigInt& y, std::span<const std::uint64_t> primes, std::size_t i)
{
    if (i == primes.size() || y == 0)
        return y;
    BigInt q;
    mpz_fdiv_q_ui(q.get_mpz_t(), y.get_mpz_t(), primes[i]);
    return legendre_phi(y, primes, i + 1) - legendre_phi(q, primes, i + 1);
}

}  // namespace

BigInt legendre_count(const BigInt& x, std::span<const std::uint64_t> primes)
{
    if (x < 0)
        throw DomainError("Legendre count needs x >= 0");
    // Larger primes first so quotients hit zero sooner.
    std::vector<std::uint64_t> order(primes.begin(), primes.end());
    std::sort(order.rbegin(), order.rend());
    return legendre_phi(x, order, 0);
}

double big_log2(const BigInt& x)
{
    if (x <= 0)
        throw DomainError("log of non-positive integer");
    long exp = 0;
    const double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
    return static_cast<double>(exp) + std::log2(mant);
}

double big_ln(const BigInt& x) { return big_log2(x) * std::numbers::ln2; }

std::uint64_t floor_log2(const BigInt& x)
{
    if (x <= 0)
        throw DomainError("log of non-positive integer");
    return mpz_sizeinbase(x.get_mpz_t(), 2) - 1;
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m)
{
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1)
            r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n)
{
    static constexpr std::uint64_t bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
    if (n < 2)
        return false;
    for (auto p : bases) {
        if (n % p == 0)
            return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (auto a : bases) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

BigInt pow2(std::uint64_t e)
{
    BigInt r;
    mpz_setbit(r.get_mpz_t(), e);
    return r;
}

}  // namespace romanov
