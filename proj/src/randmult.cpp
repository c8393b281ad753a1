#include "largezeta/randmult.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "largezeta/common.hpp"
#include "largezeta/double_double.hpp"
#include "largezeta/zeta_sum.hpp"

namespace lz::randmult {

namespace {

constexpr std::size_t kSampleChunk = 512;

std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::uint64_t checked_length(double x, std::span<const std::complex<double>> r) {
    if (!(x >= 1.0)) throw DomainError("x must be >= 1");
    const std::uint64_t N = ntheory::floor_count(x);
    if (N > r.size()) throw DomainError("coefficients do not cover [1, x]");
    return N;
}

// arg X_n for n <= N from prime angles, via smallest prime factors.
void fill_angles(const std::vector<std::uint32_t>& spf, std::uint64_t N,
                 const std::vector<double>& prime_angle, std::vector<double>& angle) {
    angle.assign(N + 1, 0.0);
    for (std::uint64_t n = 2; n <= N; ++n) {
        const std::uint64_t p = spf[n];
        angle[n] = p == n ? prime_angle[n] : angle[p] + angle[n / p];
    }
}

std::complex<double> weighted_sum(std::span<const std::complex<double>> r, std::uint64_t N,
                                  const std::vector<double>& angle) {
    CompensatedSum re, im;
    for (std::uint64_t n = 1; n <= N; ++n) {
        const auto z = r[n - 1] * std::polar(1.0, angle[n]);
        re.add(z.real());
        im.add(z.imag());
    }
    return {re.value(), im.value()};
}

double draw_angle(std::uint64_t seed, std::uint64_t stream, std::uint64_t p, double max_abs_angle) {
    return (2.0 * counter_uniform(seed, stream, p) - 1.0) * max_abs_angle;
}

}  // namespace

Coefficients constant_coefficients(std::uint64_t N, std::complex<double> value) {
    return Coefficients(N, value);
}

double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    const std::uint64_t key = mix64(mix64(mix64(seed) ^ stream) ^ index);
    return static_cast<double>(key >> 11) * 0x1.0p-53;
}

double SteinhausSample::angle_of_prime(std::uint64_t p) const {
    const auto it = std::lower_bound(primes.begin(), primes.end(), p);
    if (it == primes.end() || *it != p) throw DomainError("SteinhausSample: prime outside the sampled table");
    return angles[static_cast<std::size_t>(it - primes.begin())];
}

double SteinhausSample::angle(std::uint64_t n) const {
    double total = 0;
    for (const auto& [p, e] : ntheory::factorize(n).factors) total += e * angle_of_prime(p);
    return total;
}

SteinhausSample sample_steinhaus(const ntheory::PrimeTable& primes, std::uint64_t seed, std::uint64_t sample_index,
                                 double max_abs_angle) {
    SteinhausSample s;
    s.seed = seed;
    s.sample_index = sample_index;
    s.max_abs_angle = max_abs_angle;
    s.primes = primes.primes;
    s.angles.reserve(s.primes.size());
    for (std::uint64_t p : s.primes) s.angles.push_back(draw_angle(seed, sample_index, p, max_abs_angle));
    return s;
}

std::complex<double> random_sum(double x, std::span<const std::complex<double>> r, const SteinhausSample& sample) {
    const std::uint64_t N = checked_length(x, r);
    if (N > 0xFFFFFFFFull) throw SizeError("random_sum: x too large");
    const auto spf = ntheory::smallest_prime_factors(static_cast<std::uint32_t>(N));
    std::vector<double> prime_angle(N + 1, 0.0);
    for (std::uint64_t n = 2; n <= N; ++n)
        if (spf[n] == n) prime_angle[n] = sample.angle_of_prime(n);
    std::vector<double> angle;
    fill_angles(spf, N, prime_angle, angle);
    return weighted_sum(r, N, angle);
}

MomentEstimate mc_moment(double x, std::span<const std::complex<double>> r, double k, std::uint64_t nsamples,
                         std::uint64_t seed, const MonteCarloOptions& options) {
    const std::uint64_t N = checked_length(x, r);
    if (nsamples < 100) throw DomainError("mc_moment: nsamples must be >= 100");
    if (!(k > 0)) throw DomainError("mc_moment: k must be positive");
    MomentEstimate est{0, 0, nsamples, k};
    if (N == 1) {
        // No prime is involved: every sample equals |r(1)|^{2k}.
        est.mean = std::pow(std::norm(r[0]), k);
        return est;
    }
    if (N > 0xFFFFFFFFull) throw SizeError("mc_moment: x too large");
    const auto spf = ntheory::smallest_prime_factors(static_cast<std::uint32_t>(N));
    std::vector<std::uint64_t> primes;
    for (std::uint64_t n = 2; n <= N; ++n)
        if (spf[n] == n) primes.push_back(n);

    std::vector<double> values(nsamples);
    const std::size_t chunks = (nsamples + kSampleChunk - 1) / kSampleChunk;
    parallel_for(chunks, [&](std::size_t c) {
        std::vector<double> prime_angle(N + 1, 0.0), angle;
        const std::uint64_t s0 = c * kSampleChunk;
        const std::uint64_t s1 = std::min<std::uint64_t>(nsamples, s0 + kSampleChunk);
        for (std::uint64_t s = s0; s < s1; ++s) {
            for (std::uint64_t p : primes) prime_angle[p] = draw_angle(seed, s, p, options.max_abs_angle);
            fill_angles(spf, N, prime_angle, angle);
            values[s] = std::pow(std::norm(weighted_sum(r, N, angle)), k);
        }
    });

    CompensatedSum sum;
    for (double v : values) sum.add(v);
    est.mean = sum.value() / static_cast<double>(nsamples);
    CompensatedSum sq;
    for (double v : values) sq.add((v - est.mean) * (v - est.mean));
    const double variance = sq.value() / static_cast<double>(nsamples - 1);
    est.std_error = std::sqrt(variance / static_cast<double>(nsamples));
    return est;
}

double exact_second_moment(double x, std::span<const std::complex<double>> r) {
    const std::uint64_t N = checked_length(x, r);
    CompensatedSum sum;
    for (std::uint64_t n = 1; n <= N; ++n) sum.add(std::norm(r[n - 1]));
    return sum.value();
}

Coefficients dirichlet_power(double x, std::span<const std::complex<double>> r, unsigned k) {
    const std::uint64_t N = checked_length(x, r);
    if (k == 0) return Coefficients{1.0};
    const double size = std::pow(static_cast<double>(N), k);
    if (size > 1e7) throw SizeError("dirichlet_power: more than 1e7 coefficients");
    Coefficients current(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(N));
    for (unsigned step = 1; step < k; ++step) {
        Coefficients next(current.size() * N, 0.0);
        for (std::uint64_t m = 1; m <= current.size(); ++m) {
            if (current[m - 1] == 0.0) continue;
            for (std::uint64_t n = 1; n <= N; ++n) next[m * n - 1] += current[m - 1] * r[n - 1];
        }
        current = std::move(next);
    }
    return current;
}

double exact_moment(double x, std::span<const std::complex<double>> r, unsigned k) {
    const auto c = dirichlet_power(x, r, k);
    CompensatedSum sum;
    for (const auto& v : c) sum.add(std::norm(v));
    return sum.value();
}

double time_average_closed_form(double x, std::span<const std::complex<double>> r, unsigned k, double T) {
    return zsum::time_average_second_moment(dirichlet_power(x, r, k), T);
}

double time_average_quadrature(double x, std::span<const std::complex<double>> r, unsigned k, double T,
                               const QuadratureOptions& options) {
    const std::uint64_t N = checked_length(x, r);
    if (k == 0) throw DomainError("time_average_quadrature: k must be positive");
    if (!(T > 0)) throw DomainError("time_average_quadrature: T must be positive");
    if (N == 1) return std::pow(std::norm(r[0]), static_cast<double>(k));

    const auto logs = zsum::log_table(N);
    auto integrand = [&](double t) {
        CompensatedSum re, im;
        for (std::uint64_t n = 1; n <= N; ++n) {
            const auto z = r[n - 1] * std::polar(1.0, reduce_phase(t, logs[n]));
            re.add(z.real());
            im.add(z.imag());
        }
        return std::pow(re.value() * re.value() + im.value() * im.value(), static_cast<double>(k));
    };

    const double width = std::numbers::pi / (k * logs[N].hi);
    const std::size_t panels = static_cast<std::size_t>(std::ceil(T / width));
    const std::size_t groups = (panels + 1023) / 1024;
    std::vector<double> value(groups), error(groups);
    parallel_for(groups, [&](std::size_t g) {
        CompensatedSum v, e;
        const std::size_t p1 = std::min(panels, (g + 1) * 1024);
        for (std::size_t p = g * 1024; p < p1; ++p) {
            const double a = T * static_cast<double>(p) / static_cast<double>(panels);
            const double b = T * static_cast<double>(p + 1) / static_cast<double>(panels);
            double err = 0;
            v.add(boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
                integrand, a, b, options.max_depth, options.relative_tolerance * 1e-3, &err));
            e.add(std::abs(err));
        }
        value[g] = v.value();
        error[g] = e.value();
    });
    CompensatedSum v, e;
    for (std::size_t g = 0; g < groups; ++g) {
        v.add(value[g]);
        e.add(error[g]);
    }
    const double result = v.value() / T;
    const double abs_error = e.value() / T;
    if (abs_error > options.relative_tolerance * std::abs(result))
        throw IntegrationError("time_average_quadrature: tolerance not reached", abs_error / std::abs(result));
    return result;
}

MomentTransferReport moment_transfer_check(double x, unsigned k, double T, std::span<const std::complex<double>> r,
                                           const MomentTransferOptions& options) {
    const std::uint64_t N = checked_length(x, r);
    if (k == 0) throw DomainError("moment_transfer_check: k must be a positive integer");
    MomentTransferReport rep;
    rep.x = x;
    rep.k = k;
    rep.T = T;
    rep.bound = std::pow(static_cast<double>(N), 2.0 * k) / T;
    if (k == 1) {
        rep.time_average = zsum::time_average_second_moment(r.first(N), T);
        rep.expectation_estimate = exact_second_moment(x, r);
    } else {
        rep.time_average = time_average_quadrature(x, r, k, T, options.quadrature);
        const auto mc = mc_moment(x, r, k, options.nsamples, options.seed);
        rep.expectation_estimate = mc.mean;
        rep.expectation_std_error = mc.std_error;
    }
    rep.discrepancy = std::abs(rep.time_average - rep.expectation_estimate);
    rep.within_budget = rep.discrepancy <= options.budget_constant * rep.bound + 3.0 * rep.expectation_std_error;
    return rep;
}

SteeredSumReport steered_friable_sum(double x, double y, double T, std::uint64_t nsamples, std::uint64_t seed) {
    if (!(T > 1.0)) throw DomainError("steered_friable_sum: T must exceed 1");
    const auto smooth = ntheory::enumerate_smooth(x, y);
    SteeredSumReport rep;
    rep.psi = smooth.size();
    rep.scale = std::log(x) / std::log(T);
    rep.samples = nsamples;
    const double bound = std::numbers::pi / std::log(T);
    std::vector<double> dev(nsamples);
    parallel_for(nsamples, [&](std::size_t s) {
        CompensatedSum re, im;
        for (std::uint64_t n : smooth) {
            double a = 0;
            for (const auto& [p, e] : ntheory::factorize(n).factors) a += e * draw_angle(seed, s, p, bound);
            const auto z = 0.5 * (std::polar(1.0, a) + 1.0);
            re.add(z.real());
            im.add(z.imag());
        }
        const std::complex<double> total(re.value(), im.value());
        dev[s] = std::abs(total - static_cast<double>(rep.psi)) / static_cast<double>(rep.psi);
    });
    CompensatedSum mean;
    for (double d : dev) {
        mean.add(d);
        rep.max_relative_deviation = std::max(rep.max_relative_deviation, d);
    }
    rep.mean_relative_deviation = mean.value() / static_cast<double>(nsamples);
    return rep;
}

}  // namespace lz::randmult
