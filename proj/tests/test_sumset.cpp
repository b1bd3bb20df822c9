#include <doctest.h>

#include <numeric>

#include "oracles.hpp"
#include "romanov/errors.hpp"
#include "romanov/sumset.hpp"

using namespace romanov;

namespace {

BigInt big(std::uint64_t v) { return BigInt(static_cast<unsigned long>(v)); }

const BlockSet& poly()
{
    static const BlockSet set(GrowthSchedule::polynomial(), 5);
    return set;
}

}  // namespace

TEST_CASE("enumerate_C small values")
{
    CHECK(enumerate_C(4, poly()).count == 0);
    CHECK(enumerate_C(5, poly()).count == 1);
    const auto e20 = enumerate_C(20, poly());
    CHECK(e20.count == 11);
    CHECK(e20.members.test(11));  // 8 + 3 = 2 + 9
    CHECK_FALSE(e20.members.test(6));
    CHECK_THROWS_AS(enumerate_C(0, poly()), DomainError);
    CHECK_THROWS_AS(enumerate_C(1000, poly(), 999), CapacityError);
}

TEST_CASE("enumerate_C matches sort-unique over the multiset")
{
    const auto ob = oracle::polynomial_blocks();
    for (std::uint64_t x : {1u, 2u, 3u, 17u, 100u, 511u, 512u, 513u, 4096u, 10000u}) {
        const auto expect = oracle::sumset_upto(ob, x);
        const auto got = enumerate_C(x, poly());
        REQUIRE(got.count == expect.size());
        std::vector<std::uint64_t> listed;
        got.members.for_each_set([&](std::uint64_t c) { listed.push_back(c); });
        REQUIRE(listed == expect);
    }
    const auto pb = oracle::paper_blocks();
    const BlockSet paper(GrowthSchedule::paper(), 2);
    for (std::uint64_t x : {4u, 7u, 1000u, 65536u, 70000u})
        REQUIRE(enumerate_C(x, paper).count == oracle::sumset_upto(pb, x).size());
}

TEST_CASE("split_S1_S2 examples")
{
    const auto r20 = split_S1_S2(20, poly());
    CHECK(r20.j == 2);
    CHECK(r20.s1_count == 0);
    CHECK(r20.s2_count == 11);
    CHECK(r20.c_count == 11);

    const auto r100 = split_S1_S2(100, poly());
    CHECK(r100.s1_count + r100.s2_count == enumerate_C(100, poly()).count);
    CHECK(r100.c_count == 41);

    const auto r600 = split_S1_S2(600, poly());
    CHECK(r600.j == 3);
    CHECK(r600.s1_coprime_violations == 0);
    CHECK(r600.partition_holds());

    const auto r1 = split_S1_S2(1, poly());
    CHECK(r1.j == 0);
    CHECK(r1.c_count == 0);
}

TEST_CASE("split_S1_S2 agrees with explicit witness classification")
{
    const auto ob = oracle::polynomial_blocks();
    for (std::uint64_t x : {20u, 100u, 600u, 1000u, 10000u, 70000u}) {
        const auto expect = oracle::split_upto(ob, x);
        const auto got = split_S1_S2(x, poly());
        CAPTURE(x);
        CHECK(got.s1_count == expect.s1);
        CHECK(got.s2_count == expect.s2);
        CHECK(got.s1_overlap == expect.overlap);
        CHECK(got.c_count == expect.total);
        CHECK(got.s1_coprime_violations == 0);
    }
}

TEST_CASE("s1_bound")
{
    const PrimeTable& t = poly().primes();
    const auto b100 = s1_bound(100, poly(), t);
    CHECK(b100.bound == ExactRational(BigInt(172), BigInt(3)));  // 100 * 8/15 + 4
    CHECK(b100.legendre == BigInt(53));
    CHECK(ExactRational(*b100.legendre) <= b100.bound);
    CHECK_FALSE(s1_bound_at(pow2(1000), kLegendreMaxPrimes + 1, table_with_odd_primes(30)).legendre.has_value());

    CHECK(s1_bound(20, poly(), t).bound == ExactRational(BigInt(44), BigInt(3)));  // 14.67
    CHECK(s1_bound_at(0, 2, t).bound == ExactRational(4));
    CHECK(s1_bound_at(37, 0, t).bound == ExactRational(37));
    CHECK(s1_bound(0, poly(), t).bound == ExactRational(0));
}

TEST_CASE("s2_bound")
{
    const PrimeTable& t = poly().primes();
    CHECK(s2_bound(20, poly(), t) == ExactRational(BigInt(70), BigInt(3)));  // 23.33
    CHECK(s2_bound(600, poly(), t) == ExactRational(468));
    CHECK(ExactRational(big(split_S1_S2(600, poly()).s2_count)) <= s2_bound(600, poly(), t));
    CHECK_THROWS_AS(s2_bound(10, poly(), t), InapplicableError);

    const BlockSet paper = BlockSet::covering(GrowthSchedule::paper(), pow2(20));
    const ExactRational expect = ExactRational(pow2(20)) * ExactRational(2, 3) + ExactRational(2) + ExactRational(4 * 20);
    CHECK(s2_bound(pow2(20), paper, paper.primes()) == expect);
}

TEST_CASE("c_upper_report")
{
    const PrimeTable& t = poly().primes();
    const auto r20 = c_upper_report(20, poly(), t);
    CHECK(r20.sqrt_check);
    CHECK(r20.c_within_bound());
    CHECK(*r20.c_bound == *r20.s1_bound + *r20.s2_bound);

    const auto r5 = c_upper_report(100000, poly(), t);
    CHECK(r5.c_within_bound());
    CHECK(r5.s1_within_legendre());
    CHECK(r5.s1_within_bound());
    CHECK(r5.s2_within_bound());
    CHECK(r5.c_count == 9017);

    const auto r3 = c_upper_report(1000, poly(), t);
    CHECK(r3.c_count == 243);
    CHECK(r5.density < r3.density);

    CHECK_THROWS_AS(c_upper_report(10, poly(), t), InapplicableError);
}

TEST_CASE("sieve domination holds on a dense grid")
{
    const PrimeTable& t = poly().primes();
    for (std::uint64_t x = 16; x <= 20'000; x += 37) {
        const auto r = c_upper_report(x, poly(), t);
        REQUIRE(r.partition_holds());
        REQUIRE(r.s1_coprime_violations == 0);
        REQUIRE(r.s1_within_legendre());
        REQUIRE(r.s1_within_bound());
        REQUIRE(r.s2_within_bound());
        REQUIRE(r.c_within_bound());
    }
}

TEST_CASE("ratio_scan")
{
    CHECK(ratio_scan({}, poly()).empty());

    const std::vector<std::uint64_t> five{5};
    const auto r5 = ratio_scan(five, poly());
    REQUIRE(r5.size() == 1);
    CHECK(r5[0].b_count == 1);
    CHECK(r5[0].c_count == 1);
    CHECK(*r5[0].ratio == ExactRational(1));

    const std::vector<std::uint64_t> grid{1000, 10000, 100000};
    const auto rs = ratio_scan(grid, poly());
    REQUIRE(rs.size() == 3);
    for (const auto& p : rs) {
        REQUIRE(p.ratio);
        CHECK(*p.ratio > ExactRational(0));
        CHECK(p.c_count == enumerate_C(p.x, poly()).count);
        CHECK(p.b_count == count_B(big(p.x), poly()));
    }

    const std::vector<std::uint64_t> bad{100, 10};
    CHECK_THROWS_AS(ratio_scan(bad, poly()), DomainError);

    const std::vector<std::uint64_t> tiny{1};
    CHECK_FALSE(ratio_scan(tiny, poly())[0].ratio.has_value());
}
