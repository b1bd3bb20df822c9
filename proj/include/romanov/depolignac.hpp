#pragma once

// Covering congruences for powers of two and the odd progressions they
// certify as never of the form p + 2^k; plus the direct density scan of
// numbers that are of that form.

#include <cstdint>
#include <optional>
#include <vector>

#include "romanov/rational.hpp"

namespace romanov {

// k = residue (mod modulus) implies 2^k = 2^residue (mod prime), which needs
// prime | 2^modulus - 1.
struct CoveringEntry {
    std::uint64_t residue = 0;
    std::uint64_t modulus = 0;
    std::uint64_t prime = 0;

    friend bool operator==(const CoveringEntry&, const CoveringEntry&) = default;
};

struct CoveringSystem {
    std::vector<CoveringEntry> entries;

    // lcm of the moduli (1 for an empty system). CapacityError on overflow.
    std::uint64_t lcm() const;

    friend bool operator==(const CoveringSystem&, const CoveringSystem&) = default;
};

// MalformedError unless: moduli >= 2, 0 <= residue < modulus, primes prime and
// pairwise distinct, prime | 2^modulus - 1.
void validate(const CoveringSystem& system);

struct CoverResult {
    bool covers = false;
    std::uint64_t lcm = 1;
    std::vector<std::uint64_t> uncovered;  // residues mod lcm, ascending
};

// Residue scan over [0, lcm).
CoverResult covering_verify(const CoveringSystem& system);

struct APCertificate {
    BigInt residue;
    BigInt modulus;
    CoveringSystem source;

    friend bool operator==(const APCertificate&, const APCertificate&) = default;
};

// n = 1 (mod 2) and n = 2^a_i (mod q_i) for all i, by CRT. PreconditionError
// when the system does not cover; MalformedError as validate().
APCertificate crt_combine(const CoveringSystem& system);

struct Representation {
    std::uint64_t n = 0;
    std::uint64_t p = 0;
    unsigned k = 0;

    friend bool operator==(const Representation&, const Representation&) = default;
};

struct ScanReport {
    std::uint64_t limit = 0;
    std::uint64_t members_scanned = 0;
    // Members n = p + 2^k, smallest k first; at most one entry per member.
    std::vector<Representation> exceptions;
    // (n, k) pairs where no covering prime divides n - 2^k (certificate scans).
    std::uint64_t cover_failures = 0;
    // Romanov scans: odd n <= limit of the form p + 2^k, k >= k_min.
    std::uint64_t representable = 0;
    std::optional<double> representable_fraction;

    friend bool operator==(const ScanReport&, const ScanReport&) = default;
};

// Every member n = residue + i * modulus <= limit is tested against all k with
// k_min <= k and 2^k < n. Parallel over members.
ScanReport ap_scan(const APCertificate& cert, std::uint64_t limit, unsigned k_min = 1);

// Fraction of odd n <= limit that equal p + 2^k for a prime p and k >= k_min.
// DomainError for limit < 3.
ScanReport romanov_density_scan(std::uint64_t limit, unsigned k_min = 1);

}  // namespace romanov
