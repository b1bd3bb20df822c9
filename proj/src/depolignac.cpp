#include "romanov/depolignac.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "romanov/arith.hpp"
#include "romanov/errors.hpp"
#include "romanov/kernels.hpp"

namespace romanov {

namespace {

constexpr std::uint64_t kMaxCoveringLcm = 100'000'000;

std::uint64_t pow2_mod(std::uint64_t e, std::uint64_t m)
{
    unsigned __int128 r = 1 % m;
    unsigned __int128 b = 2 % m;
    while (e) {
        if (e & 1)
            r = r * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return static_cast<std::uint64_t>(r);
}

std::string describe(const CoveringEntry& e)
{
    return "(" + std::to_string(e.residue) + " mod " + std::to_string(e.modulus) + ", q = " +
           std::to_string(e.prime) + ")";
}

}  // namespace

std::uint64_t CoveringSystem::lcm() const
{
    std::uint64_t l = 1;
    for (const auto& e : entries) {
        if (e.modulus == 0)
            throw MalformedError("zero modulus in covering system");
        const std::uint64_t g = std::gcd(l, e.modulus);
        const std::uint64_t f = e.modulus / g;
        if (l > UINT64_MAX / f)
            throw CapacityError("covering system lcm overflows 64 bits");
        l *= f;
    }
    return l;
}

void validate(const CoveringSystem& system)
{
    std::unordered_set<std::uint64_t> seen;
    for (const auto& e : system.entries) {
        if (e.modulus < 2)
            throw MalformedError("modulus below 2 in entry " + describe(e));
        if (e.residue >= e.modulus)
            throw MalformedError("residue not reduced in entry " + describe(e));
        if (!is_prime_u64(e.prime))
            throw MalformedError("non-prime q in entry " + describe(e));
        if (pow2_mod(e.modulus, e.prime) != 1)
            throw MalformedError("q does not divide 2^m - 1 in entry " + describe(e));
        if (!seen.insert(e.prime).second)
            throw MalformedError("repeated prime in entry " + describe(e));
    }
}

CoverResult covering_verify(const CoveringSystem& system)
{
    validate(system);
    CoverResult r;
    r.lcm = system.lcm();
    if (r.lcm > kMaxCoveringLcm)
        throw CapacityError("covering lcm " + std::to_string(r.lcm) + " too large to scan");
    std::vector<char> hit(r.lcm, 0);
    for (const auto& e : system.entries) {
        for (std::uint64_t k = e.residue; k < r.lcm; k += e.modulus)
            hit[k] = 1;
    }
    for (std::uint64_t k = 0; k < r.lcm; ++k) {
        if (!hit[k])
            r.uncovered.push_back(k);
    }
    r.covers = r.uncovered.empty();
    return r;
}

APCertificate crt_combine(const CoveringSystem& system)
{
    if (!covering_verify(system).covers)
        throw PreconditionError("CRT certificate needs a covering system");
    BigInt residue = 1;
    BigInt modulus = 2;
    BigInt inv;
    for (const auto& e : system.entries) {
        const BigInt q(static_cast<unsigned long>(e.prime));
        if (mpz_invert(inv.get_mpz_t(), modulus.get_mpz_t(), q.get_mpz_t()) == 0)
            throw MalformedError("CRT moduli not coprime at entry " + describe(e));
        BigInt target(static_cast<unsigned long>(pow2_mod(e.residue, e.prime)));
        BigInt step = (target - residue) * inv;
        mpz_mod(step.get_mpz_t(), step.get_mpz_t(), q.get_mpz_t());
        residue += modulus * step;
        modulus *= q;
    }
    return APCertificate{residue, modulus, system};
}

ScanReport ap_scan(const APCertificate& cert, std::uint64_t limit, unsigned k_min)
{
    if (cert.modulus <= 0 || cert.residue <= 0)
        throw DomainError("certificate needs positive residue and modulus");
    ScanReport rep;
    rep.limit = limit;
    if (cert.residue > limit)
        return rep;
    const std::uint64_t r = cert.residue.get_ui();
    const std::uint64_t step = cert.modulus > limit ? limit + 1 : cert.modulus.get_ui();
    const std::uint64_t members = (limit - r) / step + 1;
    rep.members_scanned = members;

    std::vector<std::uint64_t> qs;
    for (const auto& e : cert.source.entries)
        qs.push_back(e.prime);
    const OddPrimeBitmap primes(limit);

    std::vector<Representation> found;
    std::uint64_t failures = 0;
#pragma omp parallel
    {
        std::vector<Representation> local;
        std::uint64_t local_failures = 0;
#pragma omp for schedule(dynamic) nowait
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(members); ++i) {
            const std::uint64_t n = r + static_cast<std::uint64_t>(i) * step;
            bool represented = false;
            for (unsigned k = k_min; k < 64 && (std::uint64_t{1} << k) < n; ++k) {
                const std::uint64_t v = n - (std::uint64_t{1} << k);
                if (!represented && primes.is_prime(v)) {
                    local.push_back({n, v, k});
                    represented = true;
                }
                if (std::none_of(qs.begin(), qs.end(), [v](std::uint64_t q) { return v % q == 0; }))
                    ++local_failures;
            }
        }
#pragma omp critical
        {
            found.insert(found.end(), local.begin(), local.end());
            failures += local_failures;
        }
    }
    std::sort(found.begin(), found.end(),
              [](const Representation& a, const Representation& b) { return a.n < b.n; });
    rep.exceptions = std::move(found);
    rep.cover_failures = failures;
    return rep;
}

ScanReport romanov_density_scan(std::uint64_t limit, unsigned k_min)
{
    if (limit < 3)
        throw DomainError("density scan needs limit >= 3");
    const OddPrimeBitmap primes(limit);
    BitArray marks(limit + 1);
    mark_prime_plus_power(marks, primes, k_min, limit);

    ScanReport rep;
    rep.limit = limit;
    rep.members_scanned = (limit + 1) / 2;
    for (std::uint64_t n = 1; n <= limit; n += 2)
        rep.representable += marks.test(n) ? 1 : 0;
    rep.representable_fraction =
        static_cast<double>(rep.representable) / static_cast<double>(rep.members_scanned);
    return rep;
}

}  // namespace romanov
