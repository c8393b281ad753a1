#include "largezeta/friable.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_map>

#include "largezeta/common.hpp"
#include "largezeta/ntheory.hpp"

namespace lz::friable {

namespace {

struct KeyHash {
    std::size_t operator()(const std::pair<std::uint64_t, std::uint32_t>& k) const noexcept {
        return std::hash<std::uint64_t>{}(k.first * 0x9E3779B97F4A7C15ull ^ k.second);
    }
};

// Per-invocation memoized counter; never shared across threads.
class PsiCounter {
public:
    PsiCounter(const std::vector<std::uint64_t>& primes, std::size_t budget)
        : primes_(primes), budget_(budget) {}

    // Count of n <= N whose prime factors lie in primes_[0..k).
    std::uint64_t count(std::uint64_t N, std::uint32_t k) {
        if (N == 0) return 0;
        if (N == 1 || k == 0) return 1;
        if (primes_[k - 1] >= N) return N;
        if (k == 1) return static_cast<std::uint64_t>(std::bit_width(N));
        const auto key = std::make_pair(N, k);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        std::uint64_t total = 1;
        for (std::uint32_t j = 1; j <= k; ++j) {
            const std::uint64_t p = primes_[j - 1];
            if (p > N) break;
            total += count(N / p, j);
        }
        if (memo_.size() < budget_) memo_.emplace(key, total);
        return total;
    }

private:
    const std::vector<std::uint64_t>& primes_;
    std::size_t budget_;
    std::unordered_map<std::pair<std::uint64_t, std::uint32_t>, std::uint64_t, KeyHash> memo_;
};

double hermite(double y0, double d0, double y1, double d1, double h, double theta) {
    const double t2 = theta * theta, t3 = t2 * theta;
    return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + theta) * h * d0 + (-2 * t3 + 3 * t2) * y1 +
           (t3 - t2) * h * d1;
}

}  // namespace

FriableCount psi_exact(double x, double y, const PsiOptions& options) {
    if (!(x >= 1.0)) throw DomainError("psi_exact: x must be >= 1");
    const std::uint64_t N = ntheory::floor_count(x);
    FriableCount result{x, y, 1};
    const std::uint64_t ycap = y >= 2.0 ? std::min<std::uint64_t>(ntheory::floor_count(y), N) : 1;
    if (ycap < 2) return result;
    const auto primes = ntheory::sieve_primes(ycap).primes;
    PsiCounter counter(primes, options.memo_budget);
    result.count = counter.count(N, static_cast<std::uint32_t>(primes.size()));
    return result;
}

namespace {

// Grid values rho(i / m) for i = 0..n.
std::vector<double> integrate_dickman(std::size_t n, std::size_t m) {
    const double h = 1.0 / static_cast<double>(m);
    std::vector<double> rho(n + 1, 1.0);

    // rho' just right / left of grid point i (only differs at u = 1).
    auto deriv_right = [&](std::size_t i) { return i < m ? 0.0 : -rho[i - m] / (i * h); };
    auto deriv_left = [&](std::size_t i) { return i <= m ? 0.0 : -rho[i - m] / (i * h); };

    for (std::size_t i = m; i < n; ++i) {
        const double u = static_cast<double>(i) * h;
        const std::size_t j = i - m;
        const double mid = hermite(rho[j], deriv_right(j), rho[j + 1], deriv_left(j + 1), h, 0.5);
        const double g0 = rho[j] / u;
        const double gm = mid / (u + 0.5 * h);
        const double g1 = rho[j + 1] / (u + h);
        rho[i + 1] = rho[i] - h / 6.0 * (g0 + 4.0 * gm + g1);
    }
    return rho;
}

}  // namespace

DickmanTable build_dickman_table(double u_max, unsigned steps_per_unit) {
    if (!(u_max >= 0.0)) throw DomainError("build_dickman_table: u_max must be >= 0");
    if (steps_per_unit < 2) throw DomainError("build_dickman_table: steps_per_unit must be >= 2");
    const std::size_t m = steps_per_unit;
    const std::size_t n = std::max<std::size_t>(m + 1, static_cast<std::size_t>(std::ceil(u_max * m)));

    DickmanTable table;
    table.step = 1.0 / static_cast<double>(m);
    table.u_max = static_cast<double>(n) * table.step;
    table.values = integrate_dickman(n, m);
    const auto fine = integrate_dickman(2 * n, 2 * m);
    for (std::size_t i = 0; i <= n; ++i)
        table.tolerance = std::max(table.tolerance, std::abs(table.values[i] - fine[2 * i]));
    return table;
}

double DickmanTable::operator()(double u) const {
    if (u < 0) throw DomainError("dickman: u must be >= 0");
    if (u <= 1.0) return 1.0;
    if (u > u_max) throw DomainError("dickman: u beyond table range");
    const std::size_t m = static_cast<std::size_t>(std::llround(1.0 / step));
    std::size_t i = static_cast<std::size_t>(std::floor(u / step));
    if (i >= values.size() - 1) i = values.size() - 2;
    const double ui = static_cast<double>(i) * step;
    const double s = u - ui;
    if (s <= 0) return values[i];
    // Delayed arguments stay inside [i - m, i - m + 1] in grid units.
    const std::size_t j = i - m;
    auto deriv_right = [&](std::size_t k) { return k < m ? 0.0 : -values[k - m] / (k * step); };
    auto deriv_left = [&](std::size_t k) { return k <= m ? 0.0 : -values[k - m] / (k * step); };
    auto delayed = [&](double theta) {
        return hermite(values[j], deriv_right(j), values[j + 1], deriv_left(j + 1), step, theta);
    };
    const double theta = s / step;
    const double g0 = values[j] / ui;
    const double gm = delayed(0.5 * theta) / (ui + 0.5 * s);
    const double g1 = delayed(theta) / u;
    return values[i] - s / 6.0 * (g0 + 4.0 * gm + g1);
}

double dickman_rho(double u, double tol) {
    if (u < 0) throw DomainError("dickman_rho: u must be >= 0");
    if (!(tol >= 1e-12)) throw DomainError("dickman_rho: tol must be >= 1e-12");
    if (u <= 1.0) return 1.0;
    auto at = [u](std::size_t m) {
        DickmanTable t;
        t.step = 1.0 / static_cast<double>(m);
        const std::size_t n = static_cast<std::size_t>(std::ceil(u * m)) + 1;
        t.u_max = static_cast<double>(n) * t.step;
        t.values = integrate_dickman(n, m);
        return t(u);
    };
    std::size_t m = 1024;
    double coarse = at(m);
    for (; m <= (1u << 17); m *= 2) {
        const double fine = at(2 * m);
        if (std::abs(fine - coarse) <= tol) return fine;
        coarse = fine;
    }
    throw PrecisionError("dickman_rho: tolerance not reached");
}

double psi_estimate(double x, double y) {
    if (!(x >= 2.0) || !(y >= 2.0)) throw DomainError("psi_estimate: requires x >= 2 and y >= 2");
    return x * dickman_rho(std::log(x) / std::log(y));
}

PsiRatioReport psi_ratio_report(double x, double y1, double y2) {
    if (!(2.0 <= y1 && y1 <= y2 && y2 <= x))
        throw DomainError("psi_ratio_report: requires 2 <= y1 <= y2 <= x");
    PsiRatioReport report;
    report.psi1 = psi_exact(x, y1).count;
    report.psi2 = psi_exact(x, y2).count;
    report.relative_gap = static_cast<double>(report.psi2 - report.psi1) / static_cast<double>(report.psi2);
    return report;
}

}  // namespace lz::friable
