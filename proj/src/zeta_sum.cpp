#include "largezeta/zeta_sum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "largezeta/common.hpp"
#include "largezeta/ntheory.hpp"

namespace lz::zsum {

namespace {

constexpr std::uint64_t kTableLimit = 1u << 22;
constexpr std::uint64_t kBlock = 1u << 16;
constexpr std::size_t kRestartEvery = 256;
// sincos rounding plus a few ulp(pi) from the reduction
constexpr double kTermError = 4e-15;
constexpr double kRotationError = 256 * 4.5e-16;

void check_args(double x, double t) {
    if (!(x >= 1.0)) throw DomainError("zeta sum: x must be >= 1");
    if (!(std::abs(t) <= kMaxFrequency)) throw PrecisionError("zeta sum: |t| beyond supported range 1e15");
}

double error_bound(double t, std::uint64_t N) {
    if (t == 0) return 0;
    const double log_n = std::log(static_cast<double>(std::max<std::uint64_t>(N, 2)));
    return kTermError + std::abs(t) * log_n * std::ldexp(1.0, -100);
}

struct ComplexAccumulator {
    CompensatedSum re, im;
    void add(std::complex<double> z) {
        re.add(z.real());
        im.add(z.imag());
    }
    std::complex<double> value() const { return {re.value(), im.value()}; }
};

// Provides ln n either from a shared table or computed on demand.
class LogSource {
public:
    explicit LogSource(std::uint64_t N) {
        if (N <= kTableLimit) table_ = log_table(N);
    }
    DoubleDouble operator()(std::uint64_t n) const { return table_.empty() ? log_dd(n) : table_[n]; }

private:
    std::vector<DoubleDouble> table_;
};

// Sum over n in [lo, hi] of e^{i t ln n}, split into blocks merged in order.
std::complex<double> phase_sum(double t, std::uint64_t N, const LogSource& logs) {
    const std::size_t blocks = static_cast<std::size_t>((N + kBlock - 1) / kBlock);
    std::vector<std::complex<double>> partial(blocks);
    parallel_for(blocks, [&](std::size_t b) {
        const std::uint64_t lo = 1 + b * kBlock;
        const std::uint64_t hi = std::min<std::uint64_t>(N, lo + kBlock - 1);
        ComplexAccumulator acc;
        for (std::uint64_t n = lo; n <= hi; ++n) {
            const double phi = reduce_phase(t, logs(n));
            acc.add({std::cos(phi), std::sin(phi)});
        }
        partial[b] = acc.value();
    });
    ComplexAccumulator total;
    for (const auto& z : partial) total.add(z);
    return total.value();
}

}  // namespace

std::vector<DoubleDouble> log_table(std::uint64_t N) {
    std::vector<DoubleDouble> logs(N + 1);
    if (N < 2) return logs;
    if (N > std::numeric_limits<std::uint32_t>::max()) throw SizeError("log_table: N too large");
    const auto spf = ntheory::smallest_prime_factors(static_cast<std::uint32_t>(N));
    for (std::uint64_t n = 2; n <= N; ++n) {
        const std::uint64_t p = spf[n];
        logs[n] = p == n ? log_dd(n) : logs[p] + logs[n / p];
    }
    return logs;
}

ZetaSumResult zeta_sum(double x, double t) {
    check_args(x, t);
    const std::uint64_t N = ntheory::floor_count(x);
    ZetaSumResult result{std::complex<double>(static_cast<double>(N), 0.0), x, t, 0.0};
    if (t == 0 || N == 1) return result;
    result.value = phase_sum(t, N, LogSource(N));
    result.phase_error_bound = error_bound(t, N);
    return result;
}

ZetaSumResult friable_zeta_sum(double x, double y, double t) {
    check_args(x, t);
    // every n <= x is y-friable: the same sum, summed the same way
    if (y >= std::floor(x)) return zeta_sum(x, t);
    const auto smooth = ntheory::enumerate_smooth(x, y);
    ZetaSumResult result{{}, x, t, 0.0};
    if (t == 0) {
        result.value = static_cast<double>(smooth.size());
        return result;
    }
    ComplexAccumulator acc;
    for (std::uint64_t n : smooth) {
        const double phi = reduce_phase(t, log_dd(n));
        acc.add({std::cos(phi), std::sin(phi)});
    }
    result.value = acc.value();
    result.phase_error_bound = error_bound(t, ntheory::floor_count(x));
    return result;
}

std::vector<ZetaSumResult> batch_zeta_sums(double x, std::span<const double> t_grid) {
    if (t_grid.empty()) throw DomainError("batch_zeta_sums: empty grid");
    for (double t : t_grid) check_args(x, t);
    if (!std::is_sorted(t_grid.begin(), t_grid.end())) throw DomainError("batch_zeta_sums: grid must be ascending");

    const std::uint64_t N = ntheory::floor_count(x);
    std::vector<ZetaSumResult> out(t_grid.size());
    const LogSource logs(N);
    const double log_n_max = std::log(static_cast<double>(std::max<std::uint64_t>(N, 2)));

    const std::size_t blocks = (t_grid.size() + kRestartEvery - 1) / kRestartEvery;
    parallel_for(blocks, [&](std::size_t b) {
        const std::size_t j0 = b * kRestartEvery;
        const std::size_t j1 = std::min(t_grid.size(), j0 + kRestartEvery);
        const std::size_t len = j1 - j0;

        // Rotation reproduces t_j exactly only if the block is arithmetic to
        // within a phase error far below the per-term bound.
        const double delta = len > 1 ? t_grid[j0 + 1] - t_grid[j0] : 0.0;
        bool arithmetic = len > 2 && N > 1;
        for (std::size_t j = j0; arithmetic && j < j1; ++j) {
            const double nominal = t_grid[j0] + static_cast<double>(j - j0) * delta;
            if (std::abs(nominal - t_grid[j]) * log_n_max > 1e-14) arithmetic = false;
        }

        if (!arithmetic) {
            for (std::size_t j = j0; j < j1; ++j) {
                const double t = t_grid[j];
                out[j] = {std::complex<double>(static_cast<double>(N), 0.0), x, t, 0.0};
                if (t == 0 || N == 1) continue;
                ComplexAccumulator acc;
                for (std::uint64_t n = 1; n <= N; ++n) {
                    const double phi = reduce_phase(t, logs(n));
                    acc.add({std::cos(phi), std::sin(phi)});
                }
                out[j].value = acc.value();
                out[j].phase_error_bound = error_bound(t, N);
            }
            return;
        }

        std::vector<ComplexAccumulator> acc(len);
        for (std::uint64_t n = 1; n <= N; ++n) {
            const DoubleDouble L = logs(n);
            std::complex<double> z = std::polar(1.0, reduce_phase(t_grid[j0], L));
            const std::complex<double> w = std::polar(1.0, reduce_phase(delta, L));
            for (std::size_t k = 0; k < len; ++k) {
                acc[k].add(z);
                z *= w;
            }
        }
        for (std::size_t k = 0; k < len; ++k) {
            const double t = t_grid[j0 + k];
            out[j0 + k] = {acc[k].value(), x, t, error_bound(t, N) + kRotationError};
            if (t == 0) out[j0 + k] = {std::complex<double>(static_cast<double>(N), 0.0), x, t, 0.0};
        }
    });
    return out;
}

UnimodularCM UnimodularCM::power(double theta, double scale_x) {
    if (!(scale_x > 1.0)) throw DomainError("UnimodularCM::power: scale_x must exceed 1");
    UnimodularCM f;
    f.power_form_ = true;
    f.log_rate_ = theta / std::log(scale_x);
    return f;
}

UnimodularCM UnimodularCM::prime_phases(std::map<std::uint64_t, double> phases) {
    UnimodularCM f;
    f.power_form_ = false;
    f.phases_ = std::move(phases);
    return f;
}

double UnimodularCM::angle(std::uint64_t n) const {
    if (n == 0) throw DomainError("UnimodularCM: n must be positive");
    if (power_form_) return log_rate_ * std::log(static_cast<double>(n));
    double total = 0;
    for (const auto& [p, e] : ntheory::factorize(n).factors) {
        if (auto it = phases_.find(p); it != phases_.end()) total += e * it->second;
    }
    return total;
}

std::complex<double> twisted_friable_sum(double x, double y, const UnimodularCM& f) {
    if (!(x >= 1.0)) throw DomainError("twisted_friable_sum: x must be >= 1");
    ComplexAccumulator acc;
    for (std::uint64_t n : ntheory::enumerate_smooth(x, y)) acc.add(f(n));
    return acc.value();
}

double time_average_second_moment(std::span<const std::complex<double>> r, double T) {
    if (!(T > 0)) throw DomainError("time average: T must be positive");
    const std::uint64_t N = r.size();
    const auto logs = log_table(N);
    CompensatedSum diagonal;
    for (const auto& c : r) diagonal.add(std::norm(c));
    std::vector<double> rows(N, 0.0);
    // Row n collects sum_{m<n} Re[r(n) conj r(m) (e^{iTL} - 1) / (iL)], L = ln(n/m).
    parallel_for(N, [&](std::size_t idx) {
        const std::uint64_t n = idx + 1;
        if (r[idx] == 0.0) return;
        CompensatedSum row;
        for (std::uint64_t m = 1; m < n; ++m) {
            const auto c = r[idx] * std::conj(r[m - 1]);
            if (c == 0.0) continue;
            const DoubleDouble L = logs[n] - logs[m];
            const double theta = reduce_phase(T, L);
            const double s = std::sin(0.5 * theta);
            // (e^{i theta} - 1) / i = sin(theta) + i (1 - cos(theta))
            const std::complex<double> kernel(std::sin(theta), 2 * s * s);
            row.add((c * kernel).real() / L.hi);
        }
        rows[idx] = row.value();
    });
    CompensatedSum off;
    for (double v : rows) off.add(v);
    return diagonal.value() + 2.0 * off.value() / T;
}

double mean_square_exact(double x, double T) {
    if (!(x >= 1.0)) throw DomainError("mean_square_exact: x must be >= 1");
    if (!(T > 1.0)) throw DomainError("mean_square_exact: T must exceed 1");
    const std::vector<std::complex<double>> ones(ntheory::floor_count(x), 1.0);
    return time_average_second_moment(ones, T);
}

PolyaVinogradovRatio polya_vinogradov_ratio(double t, std::uint64_t stride) {
    if (!(t >= 10.0)) throw DomainError("polya_vinogradov_ratio: t must be >= 10");
    check_args(1.0, t);
    if (stride == 0) throw DomainError("polya_vinogradov_ratio: stride must be positive");
    const std::uint64_t top = static_cast<std::uint64_t>(std::ceil(t)) - 1;  // integer x < t
    const LogSource logs(top);
    const double scale = std::sqrt(t) * std::log(t);
    PolyaVinogradovRatio best;
    ComplexAccumulator acc;
    for (std::uint64_t n = 1; n <= top; ++n) {
        const double phi = reduce_phase(t, logs(n));
        acc.add({std::cos(phi), std::sin(phi)});
        if (n % stride != 0) continue;
        ++best.samples;
        const double ratio = std::abs(acc.value()) / scale;
        if (ratio > best.ratio) {
            best.ratio = ratio;
            best.argmax = n;
        }
    }
    return best;
}

}  // namespace lz::zsum
