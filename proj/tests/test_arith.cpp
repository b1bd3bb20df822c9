#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "romanov/arith.hpp"
#include "romanov/errors.hpp"

using namespace romanov;

TEST_CASE("sieve_primes small limits")
{
    const PrimeTable t10 = sieve_primes(10);
    CHECK(std::vector<std::uint64_t>(t10.primes().begin(), t10.primes().end()) ==
          std::vector<std::uint64_t>{2, 3, 5, 7});
    CHECK(t10.odd_count() == 3);
    CHECK(t10.odd_prime(1) == 3);

    const PrimeTable t2 = sieve_primes(2);
    CHECK(t2.primes().size() == 1);
    CHECK(t2.theta_prefix().empty());

    CHECK_THROWS_AS(sieve_primes(1), DomainError);
    CHECK_THROWS_AS(sieve_primes(0), DomainError);
}

TEST_CASE("sieve_primes to 10^6 matches an independent primality count")
{
    const PrimeTable t = sieve_primes(1'000'000);
    std::uint64_t expected = 0;
    for (std::uint64_t n = 2; n <= 1'000'000; ++n)
        expected += is_prime_u64(n) ? 1 : 0;
    CHECK(expected == 78498);
    CHECK(t.primes().size() == expected);

    // Every element passes a trial-division check on a sample; no gaps.
    for (std::size_t i = 0; i < t.primes().size(); i += 997)
        CHECK(oracle::trial_prime(t.primes()[i]));
    CHECK(std::is_sorted(t.primes().begin(), t.primes().end()));
}

TEST_CASE("theta prefix increments are log p")
{
    const PrimeTable t = sieve_primes(200'000);
    const auto theta = t.theta_prefix();
    REQUIRE(theta.size() == t.odd_count());
    CHECK(theta[0] == doctest::Approx(std::log(3.0)).epsilon(1e-15));
    for (std::size_t i = 1; i < theta.size(); ++i) {
        REQUIRE(theta[i] > theta[i - 1]);
        const double step = theta[i] - theta[i - 1];
        const double lp = std::log(static_cast<double>(t.odd_prime(i + 1)));
        // Rounding of the stored running sum, scaled to its magnitude.
        CHECK(std::abs(step - lp) <= 1e-12 * theta[i]);
    }
}

TEST_CASE("odd_primorial")
{
    const PrimeTable t = sieve_primes(1000);
    CHECK(odd_primorial(1, t) == 3);
    CHECK(odd_primorial(3, t) == 105);
    CHECK(odd_primorial(4, t) == 1155);
    for (std::size_t k = 1; k + 1 < t.odd_count(); ++k)
        CHECK(odd_primorial(k, t) * static_cast<unsigned long>(t.odd_prime(k + 1)) == odd_primorial(k + 1, t));
    CHECK_THROWS_AS(odd_primorial(t.odd_count() + 1, t), CapacityError);
    CHECK_THROWS_AS(odd_primorial(0, t), DomainError);
}

TEST_CASE("check_chebyshev")
{
    const PrimeTable t = table_with_odd_primes(10'000);
    const auto c2 = check_chebyshev(2, t);
    CHECK(c2.theta == doctest::Approx(std::log(3.0) + std::log(5.0)));
    CHECK(c2.theta == doctest::Approx(2.708).epsilon(1e-3));
    CHECK(c2.bound == doctest::Approx(4 * std::log(2.0)));
    CHECK(c2.holds);

    const auto c1 = check_chebyshev(1, t);
    CHECK(c1.bound == 0.0);
    CHECK_FALSE(c1.holds);

    CHECK(check_chebyshev(1000, t).holds);
    for (std::size_t j = 2; j <= 10'000; ++j)
        REQUIRE(check_chebyshev(j, t).holds);
}

TEST_CASE("mertens_product exact values")
{
    const PrimeTable t = sieve_primes(1000);
    CHECK(mertens_product(1, t) == ExactRational(2, 3));
    CHECK(mertens_product(2, t) == ExactRational(8, 15));
    CHECK(mertens_product(3, t) == ExactRational(16, 35));
    CHECK(mertens_product(1, t, true) == ExactRational(1, 3));

    for (std::size_t j = 1; j <= 50; ++j) {
        const auto fold = oracle::mertens_fold(j);
        const ExactRational q = mertens_product(j, t);
        CHECK(q.numerator().get_str() == numerator(fold).str());
        CHECK(q.denominator().get_str() == denominator(fold).str());
    }
}

TEST_CASE("mertens_product decreases and tracks 2 e^-gamma / log p_j")
{
    const PrimeTable t = table_with_odd_primes(10'000);
    const auto profile = mertens_profile(10'000, t);
    for (std::size_t j = 1; j < profile.size(); ++j)
        REQUIRE(profile[j] < profile[j - 1]);
    for (std::size_t j = 100; j <= 10'000; ++j) {
        const double scaled = profile[j - 1] * std::log(static_cast<double>(t.odd_prime(j)));
        REQUIRE(scaled >= 0.898);
        REQUIRE(scaled <= 1.347);
    }
    CHECK(profile[49] == doctest::Approx(mertens_product(50, t).to_double()).epsilon(1e-14));
}

TEST_CASE("squarefree_divisors_signed")
{
    const auto empty = squarefree_divisors_signed({});
    REQUIRE(empty.size() == 1);
    CHECK(empty[0].divisor == 1);
    CHECK(empty[0].mobius == 1);

    const std::vector<std::uint64_t> one{3};
    const auto d1 = squarefree_divisors_signed(one);
    REQUIRE(d1.size() == 2);
    CHECK(d1[1].divisor == 3);
    CHECK(d1[1].mobius == -1);

    const std::vector<std::uint64_t> two{3, 5};
    const auto d2 = squarefree_divisors_signed(two);
    REQUIRE(d2.size() == 4);
    CHECK(d2[3].divisor == 15);
    CHECK(d2[3].mobius == 1);
    int sum = 0;
    for (const auto& d : d2)
        sum += d.mobius;
    CHECK(sum == 0);

    const std::vector<std::uint64_t> dup{3, 3};
    CHECK_THROWS_AS(squarefree_divisors_signed(dup), DomainError);
}

TEST_CASE("legendre_count equals the signed divisor sum and a gcd scan")
{
    CHECK(legendre_count(10, std::vector<std::uint64_t>{3}) == 7);
    CHECK(legendre_count(100, std::vector<std::uint64_t>{3, 5}) == 53);
    CHECK(legendre_count(0, std::vector<std::uint64_t>{3, 5, 7}) == 0);
    CHECK_THROWS_AS(legendre_count(-1, std::vector<std::uint64_t>{3}), DomainError);

    // Pruned recursion against the literal divisor sum.
    const std::vector<std::uint64_t> ps{3, 5, 7, 11, 13, 17, 19};
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        const BigInt x(static_cast<unsigned long>(rng() % 10'000'000));
        BigInt direct = 0;
        for (const auto& d : squarefree_divisors_signed(ps)) {
            BigInt q;
            mpz_fdiv_q(q.get_mpz_t(), x.get_mpz_t(), d.divisor.get_mpz_t());
            direct += d.mobius * q;
        }
        REQUIRE(legendre_count(x, ps) == direct);
    }

    // Small exhaustive slice; the full sweep runs in the acceptance suite.
    const std::vector<std::uint64_t> some{5, 11};
    for (std::uint64_t x = 0; x <= 2000; ++x)
        REQUIRE(legendre_count(BigInt(static_cast<unsigned long>(x)), some) == oracle::coprime_count(x, some));
}

TEST_CASE("big_log2")
{
    CHECK(big_log2(1024) == 10.0);
    CHECK(big_log2(1) == 0.0);
    CHECK(big_log2(1000) == doctest::Approx(9.965784284662087).epsilon(1e-14));
    CHECK(big_log2(pow2(512)) == 512.0);
    for (std::uint64_t k = 0; k <= 100'000; k += 997)
        REQUIRE(big_log2(pow2(k)) == static_cast<double>(k));
    CHECK(big_log2(pow2(100'000)) == 100000.0);
    // 3 * 2^200: log2 = 200 + log2 3.
    CHECK(big_log2(BigInt(3) * pow2(200)) == doctest::Approx(200 + std::log2(3.0)).epsilon(1e-15));
    CHECK_THROWS_AS(big_log2(0), DomainError);
    CHECK_THROWS_AS(big_log2(-5), DomainError);
}

TEST_CASE("is_prime_u64 against trial division")
{
    for (std::uint64_t n = 0; n < 20'000; ++n)
        REQUIRE(is_prime_u64(n) == oracle::trial_prime(n));
    CHECK(is_prime_u64(18446744073709551557ull));  // largest 64-bit prime
    CHECK_FALSE(is_prime_u64(3215031751ull));      // strong pseudoprime to bases 2, 3, 5, 7
}

TEST_CASE("ExactRational stays canonical")
{
    const ExactRational q(BigInt(6), BigInt(-4));
    CHECK(q.numerator() == -3);
    CHECK(q.denominator() == 2);
    CHECK(q.to_string() == "-3/2");
    CHECK(q.floor() == -2);
    CHECK(ExactRational(10, 5).to_string() == "2");
    CHECK_THROWS_AS(ExactRational(BigInt(1), BigInt(0)), DomainError);
    CHECK(ExactRational(1, 3) < ExactRational(1, 2));
}
