#include "largezeta/resonance.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include "largezeta/common.hpp"
#include "largezeta/double_double.hpp"
#include "largezeta/friable.hpp"
#include "largezeta/ntheory.hpp"

namespace lz::resonance {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;
constexpr std::size_t kMaxElements = 50'000'000;
constexpr double kExactLimit = 9007199254740992.0;  // 2^53

double multiplicative_weight(std::uint64_t n, std::span<const std::uint64_t> primes, std::span<const double> w) {
    if (n == 0) throw DomainError("resonator weight: n must be positive");
    double total = 1.0;
    for (const auto& [p, e] : ntheory::factorize(n).factors) {
        auto it = std::lower_bound(primes.begin(), primes.end(), p);
        if (it == primes.end() || *it != p) return 0.0;
        total *= std::pow(w[it - primes.begin()], e);
    }
    return total;
}

// Friable elements of the support up to a truncation, sorted by log. Each
// element keeps its exponent vector so that differences of logarithms can be
// formed exactly from the per-prime logs.
struct Lattice {
    std::size_t width = 0;
    std::vector<double> log;
    std::vector<double> weight;
    std::vector<std::uint16_t> exps;  // row-major, width entries per element
    std::vector<DoubleDouble> prime_log;
};

Lattice build_lattice(std::span<const std::uint64_t> primes, std::span<const double> w, double trunc) {
    Lattice lat;
    lat.width = primes.size();
    for (auto p : primes) lat.prime_log.push_back(log_dd(p));
    const bool exact = trunc < kExactLimit;
    const std::uint64_t cap = exact ? static_cast<std::uint64_t>(std::floor(trunc)) : 0;
    const double log_cap = std::log(trunc);

    struct Raw {
        double log, weight;
        std::vector<std::uint16_t> e;
    };
    std::vector<Raw> raw;
    std::vector<std::uint16_t> e(lat.width, 0);
    // depth-first over non-decreasing prime index
    auto dfs = [&](auto&& self, std::size_t start, std::uint64_t value, double lg, double wt) -> void {
        raw.push_back({lg, wt, e});
        if (raw.size() > kMaxElements) throw SizeError("resonator truncation: too many support elements");
        for (std::size_t i = start; i < lat.width; ++i) {
            const double nlg = lg + lat.prime_log[i].hi;
            if (exact) {
                if (value > cap / primes[i]) break;
            } else if (nlg > log_cap) {
                break;
            }
            ++e[i];
            self(self, i, exact ? value * primes[i] : 0, nlg, wt * w[i]);
            --e[i];
        }
    };
    dfs(dfs, 0, 1, 0.0, 1.0);

    std::vector<std::size_t> order(raw.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return raw[a].log < raw[b].log; });
    for (auto i : order) {
        lat.log.push_back(raw[i].log);
        lat.weight.push_back(raw[i].weight);
        lat.exps.insert(lat.exps.end(), raw[i].e.begin(), raw[i].e.end());
    }
    return lat;
}

// log(elem_i / elem_j) - shift, accurate to double-double.
double log_gap(const Lattice& lat, std::size_t i, std::size_t j, DoubleDouble shift = {}) {
    DoubleDouble acc = -shift;
    for (std::size_t q = 0; q < lat.width; ++q) {
        const int d = int(lat.exps[i * lat.width + q]) - int(lat.exps[j * lat.width + q]);
        if (d == 0) continue;
        DoubleDouble term = two_prod(double(d), lat.prime_log[q].hi);
        term.lo += double(d) * lat.prime_log[q].lo;
        acc = acc + term;
    }
    return acc.hi + acc.lo;
}

double sum_of(const std::vector<double>& v, bool squared) {
    CompensatedSum s;
    for (double x : v) s.add(squared ? x * x : x);
    return s.value();
}

void check_trunc(const LongResonator& res, double T, double trunc) {
    if (!(T > std::numbers::e)) throw DomainError("resonance sums: T must exceed e");
    if (!(trunc >= std::max(res.y, 1.0))) throw DomainError("resonance sums: truncation limit must be >= y");
    if (!std::isfinite(trunc)) throw DomainError("resonance sums: truncation must be finite");
}

// Half-width in xi beyond which pairs are skipped, so that the skipped part
// stays below a thousandth of the budget.
double xi_cutoff(double diag, double total, double budget) {
    const double ratio = total * total / (1e-3 * budget * diag);
    return std::max(10.0, 2.0 * std::sqrt(std::log(std::max(ratio, 1.0))));
}

void enforce_budget(const char* name, const TruncatedSum& s, double budget) {
    if (s.tail_bound > budget * s.value) {
        std::ostringstream msg;
        msg << name << ": certified tail " << s.tail_bound << " exceeds " << budget
            << " relative at truncation " << s.truncation << "; use a larger truncation";
        throw TruncationError(msg.str());
    }
}

}  // namespace

double LongResonator::weight(std::uint64_t k) const { return multiplicative_weight(k, primes, a); }

LongResonator build_long_resonator(const ResonanceParams<double>& params) {
    if (!(0 < params.delta && params.delta < params.epsilon && params.epsilon < 0.25))
        throw DomainError("build_long_resonator: need 0 < delta < epsilon < 1/4");
    if (!(params.log_T > 1.0 && std::log(params.log_T) > 1.0))
        throw DomainError("build_long_resonator: T must exceed e^e");
    if (!(params.log_x >= std::log(16.0))) throw DomainError("build_long_resonator: x must be >= 16");

    LongResonator res;
    res.y = long_resonator_y(params);
    if (params.log_T < std::log(1e6)) res.warnings.push_back("T below 1e6: outside the meaningful regime");
    if (params.log_x < std::log(params.log_T)) res.warnings.push_back("x < log T");
    if (params.log_x > std::sqrt(params.log_T)) res.warnings.push_back("x > exp(sqrt(log T))");
    if (res.y < 2.0) return res;

    const double ap = long_resonator_coefficient(params, res.y);
    if (!(ap > 0.0 && ap < 1.0)) {
        std::ostringstream msg;
        msg << "build_long_resonator: a_p = " << ap << " outside (0, 1) (y = " << res.y << ")";
        throw RegimeError(msg.str());
    }
    res.coefficient = ap;
    res.primes = ntheory::sieve_primes(static_cast<std::uint64_t>(res.y)).primes;
    res.a.assign(res.primes.size(), ap);
    return res;
}

LongResonator make_long_resonator(std::vector<std::uint64_t> primes, std::vector<double> a) {
    if (primes.size() != a.size()) throw DomainError("make_long_resonator: size mismatch");
    LongResonator res;
    std::vector<std::size_t> order(primes.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto i, auto j) { return primes[i] < primes[j]; });
    for (auto i : order) {
        if (!(a[i] > 0.0 && a[i] < 1.0)) throw DomainError("make_long_resonator: a_p must lie in (0, 1)");
        if (primes[i] < 2 || ntheory::factorize(primes[i]).big_omega() != 1)
            throw DomainError("make_long_resonator: support must consist of primes");
        if (!res.primes.empty() && res.primes.back() == primes[i]) throw DomainError("make_long_resonator: duplicate prime");
        res.primes.push_back(primes[i]);
        res.a.push_back(a[i]);
    }
    res.y = res.primes.empty() ? 1.0 : double(res.primes.back());
    return res;
}

double log_R0(const LongResonator& res) {
    CompensatedSum s;
    for (double ap : res.a) s.add(-std::log1p(-ap));
    return s.value();
}

double sum_ak(double x, const LongResonator& res) {
    if (!(x >= 1.0)) throw DomainError("sum_ak: x must be >= 1");
    const Lattice lat = build_lattice(res.primes, res.a, std::max(1.0, std::floor(x)));
    return sum_of(lat.weight, false);
}

RankinBound rankin_tail(std::span<const std::uint64_t> primes, std::span<const double> weights, double log_N) {
    if (primes.size() != weights.size()) throw DomainError("rankin_tail: size mismatch");
    if (!(log_N >= 0)) throw DomainError("rankin_tail: N must be >= 1");
    double sigma_max = std::numeric_limits<double>::infinity();
    bool any = false;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (weights[i] <= 0) continue;
        if (weights[i] >= 1) throw DomainError("rankin_tail: weights must be < 1");
        any = true;
        sigma_max = std::min(sigma_max, -std::log(weights[i]) / std::log(double(primes[i])));
    }
    if (!any) return {0.0, 0.0};  // only n = 1 carries weight and 1 <= N

    auto g = [&](double s) {
        double v = -s * log_N;
        for (std::size_t i = 0; i < primes.size(); ++i) {
            if (weights[i] <= 0) continue;
            v -= std::log1p(-weights[i] * std::pow(double(primes[i]), s));
        }
        return v;
    };
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double lo = 0.0, hi = sigma_max * (1 - 1e-12);
    double c = hi - phi * (hi - lo), d = lo + phi * (hi - lo);
    double gc = g(c), gd = g(d);
    for (int it = 0; it < 200 && hi - lo > 1e-15 * sigma_max; ++it) {
        if (gc < gd) {
            hi = d;
            d = c;
            gd = gc;
            c = hi - phi * (hi - lo);
            gc = g(c);
        } else {
            lo = c;
            c = d;
            gc = gd;
            d = lo + phi * (hi - lo);
            gd = g(d);
        }
    }
    const double s = gc < gd ? c : d;
    return {s, std::exp(std::min(gc, gd))};
}

TruncatedSum eval_I1(const LongResonator& res, double T, double trunc, double tail_budget) {
    check_trunc(res, T, trunc);
    const double c = T / std::log(T);
    const Lattice lat = build_lattice(res.primes, res.a, trunc);
    const std::size_t n = lat.log.size();

    const double diag = sum_of(lat.weight, true);
    const double total = sum_of(lat.weight, false);
    const double xi_max = xi_cutoff(diag, total, tail_budget);
    const double window = xi_max / c;

    // Row i holds the pairs j > i inside the window.
    std::vector<double> rows(n, 0.0);
    std::vector<std::size_t> counts(n, 0);
    parallel_for(n, [&](std::size_t i) {
        CompensatedSum row;
        for (std::size_t j = i + 1; j < n && lat.log[j] - lat.log[i] <= window + 1e-9; ++j) {
            row.add(lat.weight[i] * lat.weight[j] * gaussian_hat(c * log_gap(lat, j, i)));
            ++counts[i];
        }
        rows[i] = row.value();
    });
    CompensatedSum off;
    for (double v : rows) off.add(v);

    TruncatedSum out;
    out.truncation = trunc;
    out.support_size = n;
    out.terms = n + 2 * std::accumulate(counts.begin(), counts.end(), std::size_t{0});
    out.value = c * (kSqrtPi * diag + 2.0 * off.value());

    const auto rk = rankin_tail(res.primes, res.a, std::log(trunc) + std::log1p(-1e-12));
    out.rankin_sigma = rk.sigma;
    const double R0 = std::exp(log_R0(res));
    out.tail_bound = c * kSqrtPi * (2.0 * rk.bound * R0 + std::exp(-0.25 * xi_max * xi_max) * total * total);
    enforce_budget("eval_I1", out, tail_budget);
    return out;
}

TruncatedSum eval_I2(const LongResonator& res, double T, double x, double trunc, double tail_budget) {
    check_trunc(res, T, trunc);
    if (!(x >= 1.0)) throw DomainError("eval_I2: x must be >= 1");
    const double c = T / std::log(T);
    const Lattice lat = build_lattice(res.primes, res.a, trunc);
    const std::size_t n = lat.log.size();
    const std::uint64_t K = ntheory::floor_count(x);

    const double diag = sum_of(lat.weight, true);
    const double total = sum_of(lat.weight, false);
    const double xi_max = xi_cutoff(diag, total, tail_budget);
    const double window = xi_max / c;

    // Slot k - 1 holds sum_{m, n} a_m a_n phi_hat(c log(m / (k n))).
    std::vector<double> per_k(K, 0.0);
    std::vector<std::size_t> counts(K, 0);
    parallel_for(K, [&](std::size_t idx) {
        const std::uint64_t k = idx + 1;
        const DoubleDouble lk = log_dd(k);
        CompensatedSum acc;
        std::size_t lo = 0;
        for (std::size_t j = 0; j < n; ++j) {  // j indexes n, i indexes m
            const double target = lat.log[j] + lk.hi;
            while (lo < n && lat.log[lo] < target - window - 1e-9) ++lo;
            for (std::size_t i = lo; i < n && lat.log[i] <= target + window + 1e-9; ++i) {
                acc.add(lat.weight[i] * lat.weight[j] * gaussian_hat(c * log_gap(lat, i, j, lk)));
                ++counts[idx];
            }
        }
        per_k[idx] = acc.value();
    });
    CompensatedSum sum;
    for (double v : per_k) sum.add(v);

    TruncatedSum out;
    out.truncation = trunc;
    out.support_size = n;
    out.terms = std::accumulate(counts.begin(), counts.end(), std::size_t{0});
    out.value = c * sum.value();

    const auto rk = rankin_tail(res.primes, res.a, std::log(trunc) + std::log1p(-1e-12));
    out.rankin_sigma = rk.sigma;
    const double R0 = std::exp(log_R0(res));
    out.tail_bound = double(K) * c * kSqrtPi *
                     (2.0 * rk.bound * R0 + std::exp(-0.25 * xi_max * xi_max) * total * total);
    enforce_budget("eval_I2", out, tail_budget);
    return out;
}

Thm13Bound thm13_bound(double T, double x, double slack) {
    if (!(T > std::exp(std::numbers::e))) throw DomainError("thm13_bound: T must exceed e^e");
    if (!(x >= 2.0)) throw DomainError("thm13_bound: x must be >= 2");
    if (!(slack > 0)) throw DomainError("thm13_bound: slack must be positive");
    const double lT = std::log(T), lx = std::log(x);
    Thm13Bound out;
    out.threshold = thm13_threshold(lT, lx, slack);
    if (x < lT) out.warnings.push_back("x < log T");
    if (lx > std::sqrt(lT)) out.warnings.push_back("x > exp(sqrt(log T))");
    if (out.threshold < 2.0) {
        out.psi = 1.0;
    } else if (x <= 1e10) {
        out.psi = double(friable::psi_exact(x, out.threshold).count);
    } else {
        out.exact = false;
        out.psi = friable::psi_estimate(x, out.threshold);
    }
    return out;
}

double expint_e1(double x) {
    if (!(x > 0)) throw DomainError("expint_e1: x must be positive");
    if (x <= 1.0) {
        // -gamma - ln x - sum_{k>=1} (-x)^k / (k k!)
        double term = 1.0, sum = 0.0;
        for (int k = 1; k < 100; ++k) {
            term *= -x / k;
            const double add = term / k;
            sum += add;
            if (std::abs(add) < 1e-18 * std::abs(sum)) break;
        }
        return -std::numbers::egamma - std::log(x) - sum;
    }
    // continued fraction, modified Lentz
    constexpr double tiny = 1e-300;
    double b = x + 1.0, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -double(i) * i;
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        const double del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x);
}

Theorem14Params solve_A(double tau) {
    if (!(tau > 0) || !std::isfinite(tau)) throw DomainError("solve_A: tau must be positive");
    double lo = 1e-300, hi = 1.0;
    if (tau >= expint_e1(lo)) throw DomainError("solve_A: tau too large to bracket");
    while (expint_e1(hi) > tau) {
        lo = hi;
        hi *= 2;
        if (hi > 740) throw DomainError("solve_A: tau too small to bracket");
    }
    if (expint_e1(hi) == tau) lo = hi;
    double A = hi == 1.0 ? 0.5 : 0.5 * (lo + hi);
    for (int it = 0; it < 400; ++it) {
        const double f = expint_e1(A) - tau;
        if (f > 0) lo = A; else hi = A;
        // Newton on E_1(A) - tau with E_1' = -e^{-A}/A
        double next = A + f * A * std::exp(A);
        if (!(next > lo && next < hi)) next = lo < 1e-200 ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
        if (std::abs(next - A) <= 1e-16 * A || hi - lo <= 1e-16 * hi) {
            A = next;
            break;
        }
        A = next;
    }
    Theorem14Params p;
    p.A = A;
    p.tau = tau;
    p.tau_prime = std::exp(-A) / A - tau;
    return p;
}

double HoughResonator::weight(std::uint64_t n) const { return multiplicative_weight(n, primes, r); }

HoughResonator build_hough_resonator(double T, double x) {
    if (!(x >= 16.0)) throw DomainError("build_hough_resonator: x must be >= 16");
    if (!(T > x)) throw DomainError("build_hough_resonator: T must exceed x");
    HoughResonator h;
    h.T = T;
    h.x = x;
    h.y = T / x;
    h.a = std::sqrt(std::log(x) * std::log(std::log(x)));
    h.prime_lo = h.a * h.a;
    const double la = std::log(h.a);
    h.prime_hi = std::exp(la * la);
    if (h.prime_hi > 1e12) throw SizeError("build_hough_resonator: prime range too large to tabulate");
    if (h.prime_lo > h.prime_hi) {
        h.warnings.push_back("empty prime range: a^2 > exp((log a)^2)");
        return h;
    }
    if (h.prime_hi >= 2.0) {
        for (auto p : ntheory::sieve_primes(static_cast<std::uint64_t>(h.prime_hi)).primes) {
            if (double(p) < h.prime_lo) continue;
            h.primes.push_back(p);
            h.r.push_back(h.a / (std::sqrt(double(p)) * std::log(double(p))));
        }
    }
    if (h.primes.empty()) h.warnings.push_back("no primes in [a^2, exp((log a)^2)]");
    return h;
}

HoughBound hough_lower_bound(double T, double x, double trunc, double tail_budget) {
    const HoughResonator h = build_hough_resonator(T, x);
    if (!(trunc >= 1.0) || !std::isfinite(trunc)) throw DomainError("hough_lower_bound: truncation must be >= 1");
    const double y_over_x = h.y / x;
    if (!(y_over_x >= 1.0)) throw DomainError("hough_lower_bound: need T >= x^2");

    std::vector<double> r2(h.r.size());
    CompensatedSum log_den;
    for (std::size_t i = 0; i < h.r.size(); ++i) {
        r2[i] = h.r[i] * h.r[i];
        if (!(r2[i] < 1.0)) throw RegimeError("hough_lower_bound: r(p) >= 1, Euler product diverges");
        log_den.add(-std::log1p(-r2[i]));
    }

    HoughBound out;
    out.denominator = std::exp(log_den.value());
    const double m_cap = std::min(y_over_x, trunc);
    out.truncated = m_cap < y_over_x;
    out.numerator = sum_of(build_lattice(h.primes, r2, std::floor(m_cap)).weight, false);
    out.sum_r = sum_of(build_lattice(h.primes, h.r, std::floor(x)).weight, false);
    if (out.truncated) {
        out.numerator_tail_bound = rankin_tail(h.primes, r2, std::log(std::floor(m_cap))).bound;
        if (out.numerator_tail_bound > tail_budget * out.numerator) {
            std::ostringstream msg;
            msg << "hough_lower_bound: certified tail " << out.numerator_tail_bound << " exceeds " << tail_budget
                << " relative at truncation " << trunc << "; use a larger truncation";
            throw TruncationError(msg.str());
        }
    }
    out.value = out.numerator / out.denominator * out.sum_r;
    return out;
}

}  // namespace lz::resonance
