#include "largezeta/galsum.hpp"

#include <quadmath.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <unordered_set>

#include "largezeta/common.hpp"
#include "largezeta/double_double.hpp"
#include "largezeta/ntheory.hpp"

namespace lz::galsum {

namespace {

// sqrt(gcd / lcm) = sqrt(g / m) sqrt(g / n); never forms the lcm.
double pair_term(std::uint64_t m, std::uint64_t n) {
    if (m == n) return 1.0;
    const double g = double(std::gcd(m, n));
    return std::sqrt(g / double(m)) * std::sqrt(g / double(n));
}

std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t range) {
    // Lemire's multiply-shift with rejection
    const unsigned __int128 threshold = (-range) % range;
    for (;;) {
        const unsigned __int128 prod = (unsigned __int128)rng() * range;
        if (std::uint64_t(prod) >= threshold) return std::uint64_t(prod >> 64);
    }
}

std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(stream),
                      std::uint32_t(stream >> 32)};
    return std::mt19937_64(seq);
}

std::vector<std::uint64_t> random_subset(std::uint64_t lo, std::uint64_t hi, std::size_t N, std::mt19937_64& rng) {
    std::vector<std::uint64_t> pool(hi - lo + 1);
    std::iota(pool.begin(), pool.end(), lo);
    for (std::size_t i = 0; i < N; ++i) std::swap(pool[i], pool[i + bounded(rng, pool.size() - i)]);
    pool.resize(N);
    std::sort(pool.begin(), pool.end());
    return pool;
}

void check_range(std::uint64_t lo, std::uint64_t hi, std::size_t N) {
    if (lo == 0 || hi < lo) throw DomainError("gal search: need 1 <= lo <= hi");
    if (N == 0 || N > hi - lo + 1) throw DomainError("gal search: need 1 <= N <= range size");
    if (hi - lo + 1 > 1'000'000) throw SizeError("gal search: range too large");
}

}  // namespace

GalSet make_gal_set(std::vector<std::uint64_t> elements) {
    std::sort(elements.begin(), elements.end());
    if (!elements.empty() && elements.front() == 0) throw DomainError("GalSet: elements must be positive");
    if (std::adjacent_find(elements.begin(), elements.end()) != elements.end())
        throw DomainError("GalSet: elements must be distinct");
    GalSet set;
    set.ratio_ok = !elements.empty() && elements.back() / 2 + (elements.back() % 2) <= elements.front();
    set.elements = std::move(elements);
    return set;
}

GalSet read_gal_set(std::istream& in) {
    std::vector<std::uint64_t> v;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        std::string extra;
        std::size_t used = 0;
        std::uint64_t value = 0;
        try {
            value = std::stoull(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size() || (ls >> extra) || tok[0] == '-')
            throw DomainError("GalSet: bad integer on line " + std::to_string(lineno));
        v.push_back(value);
    }
    return make_gal_set(std::move(v));
}

void write_gal_set(std::ostream& out, const GalSet& set) {
    for (auto m : set.elements) out << m << '\n';
}

GalSet load_gal_set(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("GalSet: cannot open " + path);
    return read_gal_set(in);
}

void store_gal_set(const std::string& path, const GalSet& set) {
    std::ofstream out(path);
    if (!out) throw DomainError("GalSet: cannot write " + path);
    write_gal_set(out, set);
}

double gal_sum(const GalSet& set) {
    const auto& e = set.elements;
    const std::size_t N = e.size();
    if (N == 0) throw DomainError("gal_sum: empty set");
    std::vector<double> rows(N, 0.0);
    parallel_for(N, [&](std::size_t i) {
        CompensatedSum row;
        for (std::size_t j = i + 1; j < N; ++j) row.add(pair_term(e[i], e[j]));
        rows[i] = row.value();
    });
    CompensatedSum off;
    for (double r : rows) off.add(r);
    return (double(N) + 2.0 * off.value()) / double(N);
}

GalSearchResult brute_force_max_gal(std::uint64_t lo, std::uint64_t hi, std::size_t N) {
    check_range(lo, hi, N);
    const std::size_t R = hi - lo + 1;
    // binomial(R, N) with early exit past the guard
    double combos = 1;
    for (std::size_t i = 0; i < std::min(N, R - N); ++i) {
        combos = combos * double(R - i) / double(i + 1);
        if (combos > 1e7 * (1 + 1e-9)) throw SizeError("brute_force_max_gal: more than 1e7 subsets");
    }
    std::vector<double> term(R * R);
    for (std::size_t i = 0; i < R; ++i)
        for (std::size_t j = 0; j < R; ++j) term[i * R + j] = pair_term(lo + i, lo + j);

    std::vector<std::size_t> pick(N), best_pick;
    double best = -1;
    auto dfs = [&](auto&& self, std::size_t depth, std::size_t start, double acc) -> void {
        if (depth == N) {
            if (acc > best * (1 + 1e-14)) {
                best = acc;
                best_pick = pick;
            }
            return;
        }
        for (std::size_t i = start; i + (N - depth) <= R; ++i) {
            double add = 0;
            for (std::size_t d = 0; d < depth; ++d) add += term[pick[d] * R + i];
            pick[depth] = i;
            self(self, depth + 1, i + 1, acc + add);
        }
    };
    dfs(dfs, 0, 0, 0.0);

    std::vector<std::uint64_t> elems;
    for (auto i : best_pick) elems.push_back(lo + i);
    GalSearchResult out;
    out.set = make_gal_set(std::move(elems));
    out.value = gal_sum(out.set);
    return out;
}

GalSearchResult local_search_gal(std::uint64_t lo, std::uint64_t hi, std::size_t N, std::uint64_t iters,
                                 std::uint64_t seed, const LocalSearchOptions& options) {
    check_range(lo, hi, N);
    if (options.restarts == 0) throw DomainError("local_search_gal: need at least one restart");
    const std::size_t R = hi - lo + 1;
    const unsigned restarts = iters == 0 ? 1 : options.restarts;
    std::vector<GalSearchResult> results(restarts);

    parallel_for(restarts, [&](std::size_t r) {
        auto rng = stream_rng(seed, r);
        std::vector<std::uint64_t> current = random_subset(lo, hi, N, rng);
        std::vector<char> member(R, 0);
        for (auto m : current) member[m - lo] = 1;
        // contribution of each member: sum of pair terms with the other members
        auto contribution = [&](std::uint64_t v, std::uint64_t skip) {
            double s = 0;
            for (auto m : current)
                if (m != v && m != skip) s += pair_term(v, m);
            return s;
        };
        for (std::uint64_t step = 0; step < iters; ++step) {
            std::vector<std::pair<double, std::size_t>> order;
            for (std::size_t i = 0; i < N; ++i) order.push_back({contribution(current[i], 0), i});
            std::sort(order.begin(), order.end());
            bool improved = false;
            // lowest-contribution members are tried for removal first
            for (const auto& [out_value, idx] : order) {
                const std::uint64_t out = current[idx];
                double best_gain = 1e-12;
                std::uint64_t best_in = 0;
                for (std::uint64_t v = lo; v <= hi; ++v) {
                    if (member[v - lo]) continue;
                    const double gain = contribution(v, out) - out_value;
                    if (gain > best_gain) {
                        best_gain = gain;
                        best_in = v;
                    }
                }
                if (best_in != 0) {
                    member[out - lo] = 0;
                    member[best_in - lo] = 1;
                    current[idx] = best_in;
                    improved = true;
                    break;
                }
            }
            if (!improved) break;
        }
        results[r].set = make_gal_set(current);
        results[r].value = gal_sum(results[r].set);
    });

    std::size_t best = 0;
    for (std::size_t r = 1; r < restarts; ++r)
        if (results[r].value > results[best].value) best = r;
    return results[best];
}

GalSet divisor_set_construct(unsigned prime_count, unsigned exponent_budget, std::uint64_t anchor) {
    if (anchor == 0) throw DomainError("divisor_set_construct: anchor must be positive");
    std::vector<std::uint64_t> primes;
    if (prime_count > 0) {
        for (std::uint64_t limit = 64; primes.size() < prime_count; limit *= 2) {
            primes.clear();
            for (auto p : ntheory::sieve_primes(limit).primes)
                if (p > 2 && primes.size() < prime_count) primes.push_back(p);
        }
    }
    constexpr std::uint64_t cap = std::uint64_t(1) << 62;
    std::vector<std::uint64_t> odd{1};
    auto dfs = [&](auto&& self, std::size_t start, std::uint64_t d, unsigned used) -> void {
        for (std::size_t i = start; i < primes.size() && used < exponent_budget; ++i) {
            if (d > cap / primes[i]) throw ConstructionError("divisor_set_construct: divisor overflow");
            odd.push_back(d * primes[i]);
            self(self, i, d * primes[i], used + 1);
        }
    };
    dfs(dfs, 0, 1, 0);

    unsigned K = 0;
    for (auto d : odd) K = std::max<unsigned>(K, std::bit_width(d) - 1);
    std::vector<std::uint64_t> elems;
    for (auto d : odd) {
        const unsigned shift = K - (std::bit_width(d) - 1);
        // anchor * 2^shift * d must stay below 2^62
        if (shift >= 62 || anchor > (cap >> shift) / d)
            throw ConstructionError("divisor_set_construct: window does not fit in 63 bits");
        elems.push_back((anchor << shift) * d);
    }
    GalSet set = make_gal_set(std::move(elems));
    if (!set.ratio_ok) throw ConstructionError("divisor_set_construct: window infeasible");
    return set;
}

GalSet random_gal_set(std::uint64_t lo, std::uint64_t hi, std::size_t N, std::uint64_t seed) {
    if (lo == 0 || hi < lo || N == 0 || N > hi - lo + 1) throw DomainError("random_gal_set: bad range");
    auto rng = stream_rng(seed, 0);
    const std::uint64_t R = hi - lo + 1;
    if (R <= 10'000'000) return make_gal_set(random_subset(lo, hi, N, rng));
    if (N > R / 4 || N > 10'000'000) throw SizeError("random_gal_set: sample too dense for a range this large");
    // sparse draw: rejection of repeats
    std::vector<std::uint64_t> v;
    std::unordered_set<std::uint64_t> seen;
    while (v.size() < N) {
        const std::uint64_t m = lo + bounded(rng, R);
        if (seen.insert(m).second) v.push_back(m);
    }
    return make_gal_set(std::move(v));
}

std::int64_t bucket_index(std::uint64_t m, double T) {
    if (!(T > 1.0)) throw DomainError("bucket_set: T must exceed 1");
    if (m == 0) throw DomainError("bucket_set: elements must be positive");
    const __float128 t = T;
    const __float128 step = log1pq(logq(t) / t);
    return std::int64_t(floorq(logq(__float128(m)) / step));
}

BucketedResonator bucket_set(const GalSet& set, double T) {
    if (!(T > 1.0)) throw DomainError("bucket_set: T must exceed 1");
    BucketedResonator out;
    out.T = T;
    for (auto m : set.elements) {  // ascending, so indices are non-decreasing
        const std::int64_t j = bucket_index(m, T);
        if (out.buckets.empty() || out.buckets.back().index != j) out.buckets.push_back({j, {}, m, 0});
        out.buckets.back().elements.push_back(m);
    }
    for (auto& b : out.buckets) b.weight = std::sqrt(double(b.elements.size()));
    return out;
}

PairCountCheck pair_count_bound_check(std::uint64_t m, std::uint64_t n, double x) {
    if (m == 0 || n == 0) throw DomainError("pair_count_bound_check: m, n must be positive");
    if (!(x >= 1.0)) throw DomainError("pair_count_bound_check: x must be >= 1");
    PairCountCheck c;
    c.m = m;
    c.n = n;
    c.x = x;
    const std::uint64_t X = ntheory::floor_count(x);
    if (X > 100'000'000) throw SizeError("pair_count_bound_check: x too large to enumerate");
    const std::uint64_t g = std::gcd(m, n);
    // m k = n l forces k to be a multiple of n / g
    const std::uint64_t step = n / g, lstep = m / g;
    for (std::uint64_t t = 1; t <= X / step; ++t)
        if (t * lstep <= X) ++c.exact_count;
    const std::uint64_t mx = std::max(m, n);
    c.formula_count = static_cast<std::uint64_t>((static_cast<unsigned __int128>(X) * g) / mx);
    c.unfloored_bound = x / std::sqrt(2.0) * std::sqrt(double(g) / double(m)) * std::sqrt(double(g) / double(n));
    c.floored_bound = static_cast<std::uint64_t>(std::floor(c.unfloored_bound));
    c.ratio_ok = mx <= 2 * std::min(m, n);
    c.unfloored_holds = c.unfloored_bound <= double(c.exact_count);
    c.ok = c.formula_count == c.exact_count && (!c.ratio_ok || c.floored_bound <= c.exact_count);
    return c;
}

Thm15Report thm15_lower_bound(double T, double x, const GalSet& set) {
    if (set.size() == 0) throw DomainError("thm15_lower_bound: empty set");
    if (!(x >= 1.0) || !(T > x)) throw DomainError("thm15_lower_bound: need 1 <= x < T");
    Thm15Report r;
    r.gal_value = gal_sum(set);
    r.bound_on_max_sq = x * r.gal_value;
    const double L = std::log(T / x);
    if (x > std::sqrt(T)) r.warnings.push_back("x > sqrt(T)");
    if (std::log(x) <= std::pow(std::log(T), 0.5)) r.warnings.push_back("x <= exp(sqrt(log T))");
    const double target = std::floor(T / x);
    if (std::abs(double(set.size()) - target) > 0.1 * target)
        r.warnings.push_back("|M| differs from floor(T/x) by more than 10%");
    if (std::log(L) > 1.0) {
        const double s = std::sqrt(L * std::log(std::log(L)) / std::log(L));
        r.closed_form_sq = std::exp(2.0 * std::sqrt(2.0) * s);
        r.closed_form = std::sqrt(x) * std::exp(std::sqrt(2.0) * s);
        r.measured_constant = std::log(r.gal_value) / s;
    } else {
        r.warnings.push_back("log(T/x) <= e: closed form undefined");
    }
    return r;
}

}  // namespace lz::galsum
