#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "largezeta/common.hpp"
#include "largezeta/friable.hpp"
#include "largezeta/ntheory.hpp"
#include "oracles.hpp"

using namespace lz;

TEST_SUITE("ntheory") {

TEST_CASE("small sieves") {
    CHECK(ntheory::sieve_primes(10).primes == std::vector<std::uint64_t>{2, 3, 5, 7});
    CHECK(ntheory::sieve_primes(2).primes == std::vector<std::uint64_t>{2});
    CHECK_THROWS_AS(ntheory::sieve_primes(1), DomainError);
}

TEST_CASE("pi(10^6) against trial division") {
    const auto table = ntheory::sieve_primes(1'000'000);
    CHECK(table.size() == 78498);
    // spot-check the table against trial division on a stretch
    for (std::uint64_t n = 999'000; n <= 1'000'000; ++n) {
        bool prime = n > 1;
        for (std::uint64_t d = 2; d * d <= n && prime; ++d) prime = n % d != 0;
        CHECK(table.contains(n) == prime);
    }
}

TEST_CASE("segmented sieve agrees with the plain one at the seam") {
    const auto big = ntheory::sieve_primes(10'100'000);
    const auto small = ntheory::sieve_primes(10'000'000);
    CHECK(std::equal(small.primes.begin(), small.primes.end(), big.primes.begin()));
    CHECK(big.count_up_to(1e7) == 664579);
    for (auto it = big.primes.begin() + small.size(); it != big.primes.end(); ++it)
        REQUIRE(ntheory::factorize(*it).big_omega() == 1);
}

TEST_CASE("factorize") {
    using PP = ntheory::PrimePower;
    CHECK(ntheory::factorize(12).factors == std::vector<PP>{{2, 2}, {3, 1}});
    CHECK(ntheory::factorize(1).factors.empty());
    CHECK(ntheory::factorize(97).factors == std::vector<PP>{{97, 1}});
    CHECK_THROWS_AS(ntheory::factorize(0), DomainError);
    for (std::uint64_t n = 1; n <= 100'000; ++n) {
        std::uint64_t prod = 1;
        for (const auto& [p, e] : ntheory::factorize(n).factors)
            for (unsigned i = 0; i < e; ++i) prod *= p;
        REQUIRE(prod == n);
    }
}

TEST_CASE("is_smooth") {
    CHECK(ntheory::is_smooth(32, 2));
    CHECK_FALSE(ntheory::is_smooth(10, 3));
    CHECK(ntheory::is_smooth(1, 0.5));
    CHECK(ntheory::is_smooth(49, 7.0));
    CHECK_FALSE(ntheory::is_smooth(49, 6.999));
}

TEST_CASE("enumerate_smooth small cases") {
    CHECK(ntheory::enumerate_smooth(10, 2) == std::vector<std::uint64_t>{1, 2, 4, 8});
    CHECK(ntheory::enumerate_smooth(10, 3) == std::vector<std::uint64_t>{1, 2, 3, 4, 6, 8, 9});
    CHECK(ntheory::enumerate_smooth(10, 11) == std::vector<std::uint64_t>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
}

TEST_CASE("enumerate_smooth matches the division filter") {
    for (double y : {1.5, 2.0, 2.5, 7.0, 10.0, 31.0, 50.0, 97.0, 100.0})
        for (std::uint64_t x : {1u, 2u, 17u, 1000u, 10000u}) {
            const auto fast = ntheory::enumerate_smooth(double(x), y);
            REQUIRE(fast == oracle::smooth_filter(x, y));
            REQUIRE(friable::psi_exact(double(x), y).count == fast.size());
        }
}

TEST_CASE("enumerate_smooth is monotone in y") {
    const auto a = ntheory::enumerate_smooth(5000, 13);
    const auto b = ntheory::enumerate_smooth(5000, 29);
    CHECK(std::includes(b.begin(), b.end(), a.begin(), a.end()));
}

TEST_CASE("gcd_lcm") {
    CHECK(ntheory::gcd_lcm(12, 18).gcd == 6);
    CHECK(ntheory::gcd_lcm(12, 18).lcm == 36);
    CHECK(ntheory::gcd_lcm(7, 7).lcm == 7);
    CHECK(ntheory::gcd_lcm(6, 10).lcm == 30);
    for (std::uint64_t m = 1; m < 60; ++m)
        for (std::uint64_t n = 1; n < 60; ++n) {
            const auto g = ntheory::gcd_lcm(m, n);
            REQUIRE(g.gcd * g.lcm == m * n);
        }
    CHECK_THROWS_AS(ntheory::gcd_lcm((1ull << 62) + 1, (1ull << 62) - 1), OverflowError);
}

}  // TEST_SUITE

TEST_SUITE("friable") {

TEST_CASE("psi_exact examples") {
    CHECK(friable::psi_exact(10, 2).count == 4);
    CHECK(friable::psi_exact(20, 3).count == 10);
    CHECK(friable::psi_exact(10.7, 11).count == 10);
}

TEST_CASE("psi_exact at scale against enumeration") {
    for (double y : {2.0, 5.0, 30.0, 100.0, 1000.0}) {
        const double x = 3e6;
        CHECK(friable::psi_exact(x, y).count == ntheory::enumerate_smooth(x, y).size());
    }
    // a cache too small to hold anything still counts correctly
    friable::PsiOptions tiny;
    tiny.memo_budget = 1;
    CHECK(friable::psi_exact(1e6, 50, tiny).count == ntheory::enumerate_smooth(1e6, 50).size());
}

TEST_CASE("psi_exact monotone") {
    std::uint64_t prev = 0;
    for (double x = 1; x < 3000; x += 37) {
        const auto c = friable::psi_exact(x, 23).count;
        CHECK(c >= prev);
        CHECK(friable::psi_exact(x, 29).count >= c);
        prev = c;
    }
}

TEST_CASE("dickman on [0, 2] is analytic") {
    CHECK(friable::dickman_rho(0.5) == 1.0);
    CHECK(friable::dickman_rho(2.0) == doctest::Approx(1 - std::log(2.0)).epsilon(1e-12));
    for (int i = 0; i <= 100; ++i) {
        const double u = 1 + i / 100.0;
        REQUIRE(std::abs(friable::dickman_rho(u) - (1 - std::log(u))) < 1e-9);
    }
}

TEST_CASE("dickman on [2, 3] against the integral form") {
    CHECK(std::abs(friable::dickman_rho(3.0) - 0.0486084) < 1e-6);
    for (double u : {2.1, 2.37, 2.5, 2.9, 3.0})
        CHECK(std::abs(friable::dickman_rho(u) - oracle::dickman_rho_2_3(u)) < 1e-10);
}

TEST_CASE("dickman decreasing and positive") {
    const auto table = friable::build_dickman_table(12, 256);
    CHECK(table.tolerance < 1e-8);
    for (std::size_t i = 257; i < table.values.size(); ++i) {
        REQUIRE(table.values[i] > 0);
        REQUIRE(table.values[i] < table.values[i - 1]);
    }
    CHECK_THROWS_AS(friable::dickman_rho(-1), DomainError);
}

TEST_CASE("psi_estimate and ratio report") {
    CHECK(friable::psi_estimate(100, 10) == doctest::Approx(100 * (1 - std::log(2.0))).epsilon(1e-9));
    CHECK(friable::psi_estimate(500, 500) == doctest::Approx(500));
    CHECK(friable::psi_estimate(1e4, 100) == doctest::Approx(3068.528).epsilon(1e-6));
    const auto r = friable::psi_ratio_report(100, 3, 5);
    CHECK(r.psi1 == 20);
    CHECK(r.psi2 == 34);
    CHECK(r.relative_gap == doctest::Approx(14.0 / 34));
    CHECK(friable::psi_ratio_report(50, 7, 7).relative_gap == 0.0);
    const auto s = friable::psi_ratio_report(20, 2, 3);
    CHECK(s.psi1 == 5);
    CHECK(s.psi2 == 10);
    CHECK(s.relative_gap == doctest::Approx(0.5));
}

}  // TEST_SUITE
