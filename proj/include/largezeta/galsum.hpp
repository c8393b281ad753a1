#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace lz::galsum {

/// Strictly increasing positive integers.
struct GalSet {
    std::vector<std::uint64_t> elements;
    /// max <= 2 min
    bool ratio_ok = false;

    std::size_t size() const { return elements.size(); }
};

/// Sorts the input; throws DomainError on zero or repeated entries.
GalSet make_gal_set(std::vector<std::uint64_t> elements);

/// Newline-delimited decimal integers; blank lines and '#' comments ignored.
GalSet read_gal_set(std::istream& in);
void write_gal_set(std::ostream& out, const GalSet& set);
GalSet load_gal_set(const std::string& path);
void store_gal_set(const std::string& path, const GalSet& set);

/// (1/|M|) sum over ordered pairs of sqrt(gcd(m, n) / lcm(m, n)).
double gal_sum(const GalSet& set);

struct GalSearchResult {
    GalSet set;
    double value = 0;
};

/// Exhaustive maximizer over N-subsets of [lo, hi]; ties go to the
/// lexicographically first subset. Throws SizeError when binomial(hi - lo + 1, N)
/// exceeds 10^7.
GalSearchResult brute_force_max_gal(std::uint64_t lo, std::uint64_t hi, std::size_t N);

struct LocalSearchOptions {
    unsigned restarts = 8;
};

/// Best-improvement swap hill climbing from random N-subsets of [lo, hi].
/// `iters` caps the accepted swaps per restart; iters = 0 returns the first
/// restart's initial set. Restarts draw from their own seeded streams, so the
/// result depends only on seed.
GalSearchResult local_search_gal(std::uint64_t lo, std::uint64_t hi, std::size_t N, std::uint64_t iters,
                                 std::uint64_t seed, const LocalSearchOptions& options = {});

/// anchor * 2^K * d / 2^floor(log2 d) over odd d built from the first
/// prime_count odd primes with total exponent <= exponent_budget, where K is
/// the largest floor(log2 d). Every element lies in [anchor 2^K, anchor 2^{K+1}).
/// Throws ConstructionError when the result does not fit in 63 bits.
GalSet divisor_set_construct(unsigned prime_count, unsigned exponent_budget, std::uint64_t anchor);

/// Uniformly random N-subset of [lo, hi] (seeded).
GalSet random_gal_set(std::uint64_t lo, std::uint64_t hi, std::size_t N, std::uint64_t seed);

struct Bucket {
    std::int64_t index = 0;
    std::vector<std::uint64_t> elements;
    std::uint64_t representative = 0;  // min of the bucket
    double weight = 0;                 // sqrt of the bucket size
};

/// Elements grouped by j = floor(log m / log(1 + log T / T)), ascending j.
struct BucketedResonator {
    double T = 0;
    std::vector<Bucket> buckets;
};

/// Throws DomainError for T <= 1.
BucketedResonator bucket_set(const GalSet& set, double T);

/// Bucket index of m, computed in binary128.
std::int64_t bucket_index(std::uint64_t m, double T);

struct PairCountCheck {
    std::uint64_t m = 0, n = 0;
    double x = 0;
    /// #{(k, l) : k, l <= x, m k = n l}, by enumeration
    std::uint64_t exact_count = 0;
    /// floor(x (m, n) / max(m, n))
    std::uint64_t formula_count = 0;
    /// (x / sqrt 2) sqrt((m, n) / [m, n])
    double unfloored_bound = 0;
    std::uint64_t floored_bound = 0;
    bool ratio_ok = false;       // max <= 2 min
    bool unfloored_holds = false; // unfloored_bound <= exact_count
    /// formula matches enumeration, and floored_bound <= exact_count when ratio_ok
    bool ok = false;
};

PairCountCheck pair_count_bound_check(std::uint64_t m, std::uint64_t n, double x);

struct Thm15Report {
    double gal_value = 0;
    double bound_on_max_sq = 0;  // x * gal_value
    /// exp(2 sqrt 2 * s) with s = sqrt(L log_3 L / log_2 L), L = log(T / x)
    double closed_form_sq = 0;
    /// sqrt(x) exp(sqrt 2 * s), the square-root form
    double closed_form = 0;
    /// log(gal_value) / s, to compare with 2 sqrt 2
    double measured_constant = 0;
    std::vector<std::string> warnings;
};

Thm15Report thm15_lower_bound(double T, double x, const GalSet& set);

}  // namespace lz::galsum
