#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numeric>
#include <sstream>

#include "largezeta/common.hpp"
#include "largezeta/galsum.hpp"

using namespace lz;
using namespace lz::galsum;

namespace {

long double direct_gal(const std::vector<std::uint64_t>& v) {
    long double s = 0;
    for (auto m : v)
        for (auto n : v) {
            const auto g = std::gcd(m, n);
            s += std::sqrt((long double)g * g / ((long double)m * n));
        }
    return s / v.size();
}

}  // namespace

TEST_SUITE("galsum") {

TEST_CASE("small values") {
    CHECK(gal_sum(make_gal_set({1})) == 1.0);
    CHECK(gal_sum(make_gal_set({1, 2})) == doctest::Approx(1 + 1 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(gal_sum(make_gal_set({2, 3})) == doctest::Approx(1 + 1 / std::sqrt(6.0)).epsilon(1e-15));
    const auto s = make_gal_set({6, 4, 9});
    CHECK(s.elements == std::vector<std::uint64_t>{4, 6, 9});
    CHECK_FALSE(s.ratio_ok);
    CHECK(make_gal_set({5, 10}).ratio_ok);
    CHECK_THROWS_AS(make_gal_set({3, 3}), DomainError);
    CHECK_THROWS_AS(make_gal_set({0, 3}), DomainError);
}

TEST_CASE("against direct evaluation, with scale invariance") {
    std::vector<std::uint64_t> v;
    for (std::uint64_t n = 1; n <= 400; n += 3) v.push_back(n * n % 997 + 1);
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    const double g = gal_sum(make_gal_set(v));
    CHECK(g == doctest::Approx(double(direct_gal(v))).epsilon(1e-13));
    for (std::uint64_t c : {7ull, 1000003ull}) {
        auto w = v;
        for (auto& e : w) e *= c;
        CHECK(gal_sum(make_gal_set(w)) == doctest::Approx(g).epsilon(1e-13));
    }
    // large elements whose lcm overflows 64 bits
    const auto big = make_gal_set({(1ull << 62) - 57, (1ull << 62) - 87});
    CHECK(gal_sum(big) == doctest::Approx(double(direct_gal(big.elements))).epsilon(1e-13));
}

TEST_CASE("thread count does not change the value") {
    std::vector<std::uint64_t> v;
    for (std::uint64_t n = 1000; n < 3000; n += 7) v.push_back(n);
    const auto s = make_gal_set(v);
    set_thread_count(1);
    const double a = gal_sum(s);
    set_thread_count(4);
    const double b = gal_sum(s);
    set_thread_count(0);
    CHECK(a == b);
}

TEST_CASE("brute force maximum") {
    for (std::size_t N : {1u, 2u, 3u}) {
        const auto r = brute_force_max_gal(10, 20, N);
        CHECK(r.set.size() == N);
        // independent scan over all subsets by bitmask
        double best = 0;
        for (unsigned mask = 0; mask < (1u << 11); ++mask) {
            if (std::popcount(mask) != int(N)) continue;
            std::vector<std::uint64_t> v;
            for (unsigned i = 0; i < 11; ++i)
                if (mask >> i & 1) v.push_back(10 + i);
            best = std::max(best, double(direct_gal(v)));
        }
        CHECK(r.value == doctest::Approx(best).epsilon(1e-14));
    }
    CHECK(brute_force_max_gal(10, 20, 1).set.elements == std::vector<std::uint64_t>{10});
    CHECK(brute_force_max_gal(10, 20, 2).set.elements == std::vector<std::uint64_t>{10, 20});
    CHECK_THROWS_AS(brute_force_max_gal(1, 200, 10), SizeError);
}

TEST_CASE("local search") {
    for (std::size_t N : {2u, 3u, 4u}) {
        const auto exact = brute_force_max_gal(10, 20, N);
        const auto a = local_search_gal(10, 20, N, 100, 5);
        const auto b = local_search_gal(10, 20, N, 100, 5);
        CHECK(a.set.elements == b.set.elements);
        CHECK(a.value <= exact.value + 1e-12);
        CHECK(a.value == doctest::Approx(gal_sum(a.set)));
    }
    const auto start = local_search_gal(100, 400, 10, 0, 3);
    CHECK(start.set.elements == random_gal_set(100, 400, 10, 3).elements);
    const auto climbed = local_search_gal(100, 400, 10, 200, 3);
    CHECK(climbed.value >= start.value);
}

TEST_CASE("random sets") {
    const auto a = random_gal_set(1, 50, 20, 9);
    CHECK(a.size() == 20);
    CHECK(a.elements.front() >= 1);
    CHECK(a.elements.back() <= 50);
    CHECK(std::adjacent_find(a.elements.begin(), a.elements.end()) == a.elements.end());
    CHECK(random_gal_set(1, 50, 20, 9).elements == a.elements);
    CHECK(random_gal_set(1, 50, 50, 2).elements.size() == 50);
    const auto sparse = random_gal_set(1ull << 40, 1ull << 41, 1000, 4);
    CHECK(sparse.size() == 1000);
    CHECK_THROWS(random_gal_set(1, 5, 6, 1));
}

TEST_CASE("divisor construction") {
    const auto s = divisor_set_construct(3, 2, 1);
    // odd d from {3, 5, 7}, total exponent <= 2: 1 3 5 7 9 15 21 25 35 49
    CHECK(s.size() == 10);
    CHECK(s.ratio_ok);
    const std::uint64_t lo = s.elements.front();
    CHECK(std::has_single_bit(lo));
    for (auto e : s.elements) CHECK(e < 2 * lo);
    const auto t = divisor_set_construct(8, 3, 5);
    CHECK(t.ratio_ok);
    const auto rnd = random_gal_set(t.elements.front(), t.elements.back(), t.size(), 1);
    CHECK(gal_sum(t) > gal_sum(rnd));
    CHECK_THROWS_AS(divisor_set_construct(40, 40, 1), ConstructionError);
}

TEST_CASE("pair counts") {
    for (std::uint64_t m = 1; m <= 200; m += 3)
        for (std::uint64_t n = 1; n <= 200; n += 7)
            for (double x : {10.0, 100.0}) {
                std::uint64_t count = 0;
                for (std::uint64_t k = 1; k <= x; ++k)
                    if (m * k % n == 0 && m * k / n <= x) ++count;
                const auto c = pair_count_bound_check(m, n, x);
                REQUIRE(c.exact_count == count);
                REQUIRE(c.formula_count == count);
                const double g = double(std::gcd(m, n)), l = double(m) / g * double(n);
                REQUIRE(c.unfloored_bound == doctest::Approx(x / std::sqrt(2.0) * std::sqrt(g / l)));
                REQUIRE(c.ratio_ok == (std::max(m, n) <= 2 * std::min(m, n)));
                if (c.ratio_ok) REQUIRE(c.floored_bound <= count);
                REQUIRE(c.ok);
            }
    // a ratio-compatible pair where the unfloored bound exceeds the count
    const auto c = pair_count_bound_check(2, 3, 11);
    CHECK(c.exact_count == 3);
    CHECK(c.unfloored_bound == doctest::Approx(11 / std::sqrt(12.0)));
    CHECK_FALSE(c.unfloored_holds);
    CHECK(c.ok);
}

TEST_CASE("buckets") {
    const double T = 100, step = std::log1p(std::log(T) / T);
    for (std::uint64_t m = 1; m < 5000; ++m) {
        const double q = std::log(double(m)) / step;
        if (std::abs(q - std::round(q)) < 1e-9) continue;
        REQUIRE(bucket_index(m, T) == std::int64_t(std::floor(q)));
    }
    const auto s = make_gal_set({100, 101, 102, 103, 150, 151, 199});
    const auto b = bucket_set(s, T);
    std::size_t total = 0;
    for (std::size_t i = 0; i < b.buckets.size(); ++i) {
        const auto& k = b.buckets[i];
        total += k.elements.size();
        CHECK(k.representative == k.elements.front());
        CHECK(k.weight == doctest::Approx(std::sqrt(double(k.elements.size()))));
        for (auto e : k.elements) CHECK(bucket_index(e, T) == k.index);
        if (i) CHECK(k.index > b.buckets[i - 1].index);
    }
    CHECK(total == s.size());
    CHECK_THROWS_AS(bucket_set(s, 1.0), DomainError);
}

TEST_CASE("load and store") {
    std::istringstream in("# header\n12\n\n  5\n7 # trailing\n");
    const auto s = read_gal_set(in);
    CHECK(s.elements == std::vector<std::uint64_t>{5, 7, 12});
    std::ostringstream out;
    write_gal_set(out, s);
    std::istringstream back(out.str());
    CHECK(read_gal_set(back).elements == s.elements);

    const auto path = (std::filesystem::temp_directory_path() / "largezeta_galset_test.txt").string();
    store_gal_set(path, s);
    CHECK(load_gal_set(path).elements == s.elements);
    std::filesystem::remove(path);
    std::istringstream bad("12\nabc\n");
    CHECK_THROWS(read_gal_set(bad));
    CHECK_THROWS(load_gal_set("/nonexistent/largezeta.txt"));
}

TEST_CASE("lower bound report") {
    const auto s = divisor_set_construct(6, 3, 1);
    const double T = 1e8, x = 1e4;
    const auto r = thm15_lower_bound(T, x, s);
    const double L = std::log(T / x), sc = std::sqrt(L * std::log(std::log(L)) / std::log(L));
    CHECK(r.gal_value == doctest::Approx(gal_sum(s)));
    CHECK(r.bound_on_max_sq == doctest::Approx(x * r.gal_value));
    CHECK(r.closed_form_sq == doctest::Approx(std::exp(2 * std::sqrt(2.0) * sc)));
    CHECK(r.closed_form == doctest::Approx(std::sqrt(x) * std::exp(std::sqrt(2.0) * sc)));
    CHECK(r.measured_constant == doctest::Approx(std::log(r.gal_value) / sc));
}

}  // TEST_SUITE
