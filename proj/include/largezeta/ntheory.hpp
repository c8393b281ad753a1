#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace lz::ntheory {

/// Ascending list of every prime up to `limit`.
struct PrimeTable {
    std::uint64_t limit = 0;
    std::vector<std::uint64_t> primes;

    std::size_t size() const { return primes.size(); }
    bool contains(std::uint64_t n) const;
    /// Number of listed primes p with p <= y (y real).
    std::size_t count_up_to(double y) const;
};

struct PrimePower {
    std::uint64_t prime;
    unsigned exponent;
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
    std::uint64_t n = 1;
    std::vector<PrimePower> factors;

    /// Total number of prime factors counted with multiplicity.
    unsigned big_omega() const;
};

/// Throws DomainError when limit < 2. Limits above 10^7 use a segmented sieve.
PrimeTable sieve_primes(std::uint64_t limit);

/// Throws DomainError for n == 0.
Factorization factorize(std::uint64_t n);

/// True iff every prime factor of n is <= y. n == 1 is y-friable for all y.
bool is_smooth(std::uint64_t n, double y);

/// The y-friable integers in [1, x], ascending. Built from prime-power
/// products, so the cost is proportional to the output size.
std::vector<std::uint64_t> enumerate_smooth(double x, double y);

/// Smallest-prime-factor table for 0..n (entries 0 and 1 are 0 and 1).
std::vector<std::uint32_t> smallest_prime_factors(std::uint32_t n);

struct GcdLcm {
    std::uint64_t gcd;
    std::uint64_t lcm;
};

/// Throws OverflowError if the lcm does not fit in 64 bits.
GcdLcm gcd_lcm(std::uint64_t m, std::uint64_t n);

/// Floor of a non-negative real clamped into the 64-bit range.
std::uint64_t floor_count(double x);

}  // namespace lz::ntheory
