#include "largezeta/ntheory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "largezeta/common.hpp"

namespace lz::ntheory {

namespace {

constexpr std::uint64_t kSegmentThreshold = 10'000'000;
constexpr std::uint64_t kSegmentSize = 1u << 20;

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

std::vector<std::uint64_t> simple_sieve(std::uint64_t limit) {
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint64_t> primes;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return primes;
}

std::vector<std::uint64_t> segmented_sieve(std::uint64_t limit) {
    const auto base = simple_sieve(isqrt(limit));
    std::vector<std::uint64_t> primes = base;
    std::vector<char> mark(kSegmentSize);
    for (std::uint64_t lo = base.empty() ? 2 : base.back() + 1; lo <= limit; lo += kSegmentSize) {
        const std::uint64_t hi = std::min(limit, lo + kSegmentSize - 1);
        std::fill(mark.begin(), mark.end(), 0);
        for (std::uint64_t p : base) {
            if (p * p > hi) break;
            std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
            for (std::uint64_t j = start; j <= hi; j += p) mark[j - lo] = 1;
        }
        for (std::uint64_t n = lo; n <= hi; ++n)
            if (!mark[n - lo]) primes.push_back(n);
    }
    return primes;
}

// Depth-first product generation over primes[idx..] with running value cur.
void smooth_dfs(const std::vector<std::uint64_t>& primes, std::size_t idx, std::uint64_t cur,
                std::uint64_t limit, std::vector<std::uint64_t>& out) {
    out.push_back(cur);
    for (std::size_t i = idx; i < primes.size(); ++i) {
        const std::uint64_t p = primes[i];
        if (cur > limit / p) break;
        smooth_dfs(primes, i, cur * p, limit, out);
    }
}

}  // namespace

bool PrimeTable::contains(std::uint64_t n) const {
    return std::binary_search(primes.begin(), primes.end(), n);
}

std::size_t PrimeTable::count_up_to(double y) const {
    if (!(y >= 2.0)) return 0;
    const std::uint64_t cap = floor_count(y);
    return static_cast<std::size_t>(std::upper_bound(primes.begin(), primes.end(), cap) - primes.begin());
}

unsigned Factorization::big_omega() const {
    unsigned total = 0;
    for (const auto& f : factors) total += f.exponent;
    return total;
}

PrimeTable sieve_primes(std::uint64_t limit) {
    if (limit < 2) throw DomainError("sieve_primes: limit < 2 gives an empty prime table");
    PrimeTable table;
    table.limit = limit;
    table.primes = limit > kSegmentThreshold ? segmented_sieve(limit) : simple_sieve(limit);
    return table;
}

Factorization factorize(std::uint64_t n) {
    if (n == 0) throw DomainError("factorize: n must be positive");
    Factorization f;
    f.n = n;
    std::uint64_t rest = n;
    auto take = [&](std::uint64_t p) {
        unsigned e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        if (e) f.factors.push_back({p, e});
    };
    take(2);
    take(3);
    for (std::uint64_t d = 5; d <= rest / d; d += 6) {
        take(d);
        take(d + 2);
    }
    if (rest > 1) f.factors.push_back({rest, 1});
    return f;
}

bool is_smooth(std::uint64_t n, double y) {
    if (n == 0) throw DomainError("is_smooth: n must be positive");
    if (n == 1) return true;
    if (!(y >= 2.0)) return false;
    std::uint64_t rest = n;
    const std::uint64_t ycap = floor_count(y);
    for (std::uint64_t d = 2; d <= rest / d; d += (d == 2 ? 1 : 2)) {
        // every remaining prime factor is >= d
        if (d > ycap) return false;
        while (rest % d == 0) rest /= d;
    }
    // rest is 1 or prime
    return rest <= ycap;
}

std::vector<std::uint64_t> enumerate_smooth(double x, double y) {
    if (!(x >= 1.0)) throw DomainError("enumerate_smooth: x must be >= 1");
    const std::uint64_t limit = floor_count(x);
    std::vector<std::uint64_t> primes;
    if (y >= 2.0) {
        const std::uint64_t ycap = std::min<std::uint64_t>(floor_count(y), limit);
        if (ycap >= 2) primes = sieve_primes(ycap).primes;
    }
    std::vector<std::uint64_t> out;
    smooth_dfs(primes, 0, 1, limit, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::uint32_t> smallest_prime_factors(std::uint32_t n) {
    std::vector<std::uint32_t> spf(static_cast<std::size_t>(n) + 1, 0);
    if (n >= 1) spf[1] = 1;
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (spf[i]) continue;
        spf[i] = static_cast<std::uint32_t>(i);
        for (std::uint64_t j = i * i; j <= n; j += i)
            if (!spf[j]) spf[j] = static_cast<std::uint32_t>(i);
    }
    return spf;
}

GcdLcm gcd_lcm(std::uint64_t m, std::uint64_t n) {
    if (m == 0 || n == 0) throw DomainError("gcd_lcm: arguments must be positive");
    const std::uint64_t g = std::gcd(m, n);
    const std::uint64_t q = m / g;
    if (q > std::numeric_limits<std::uint64_t>::max() / n)
        throw OverflowError("gcd_lcm: lcm exceeds 64 bits");
    return {g, q * n};
}

std::uint64_t floor_count(double x) {
    if (!(x >= 0.0)) return 0;
    if (x >= 18446744073709551615.0) return std::numeric_limits<std::uint64_t>::max();
    return static_cast<std::uint64_t>(std::floor(x));
}

}  // namespace lz::ntheory
