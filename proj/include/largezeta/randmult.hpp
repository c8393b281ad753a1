#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <span>
#include <vector>

#include "largezeta/ntheory.hpp"

namespace lz::randmult {

/// Coefficients of an arithmetic function on [1, N]: r[n - 1] = r(n).
using Coefficients = std::vector<std::complex<double>>;

Coefficients constant_coefficients(std::uint64_t N, std::complex<double> value = 1.0);

/// Counter-based uniform variate in [0, 1) keyed by (seed, stream, index).
double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

/// One draw of the Steinhaus model: an angle per prime, extended completely
/// multiplicatively to X_n.
struct SteinhausSample {
    std::uint64_t seed = 0;
    std::uint64_t sample_index = 0;
    /// Angles are uniform on [-max_abs_angle, max_abs_angle); pi gives the
    /// full circle, smaller values the conditioned sampler |arg X_p| <= bound.
    double max_abs_angle = std::numbers::pi;
    std::vector<std::uint64_t> primes;
    std::vector<double> angles;

    double angle_of_prime(std::uint64_t p) const;
    /// arg X_n (not reduced); throws DomainError if a prime factor of n was not sampled.
    double angle(std::uint64_t n) const;
    std::complex<double> value(std::uint64_t n) const { return std::polar(1.0, angle(n)); }
};

SteinhausSample sample_steinhaus(const ntheory::PrimeTable& primes, std::uint64_t seed,
                                 std::uint64_t sample_index = 0,
                                 double max_abs_angle = std::numbers::pi);

/// sum_{n <= x} X_n r(n). r must cover [1, floor(x)].
std::complex<double> random_sum(double x, std::span<const std::complex<double>> r,
                                const SteinhausSample& sample);

struct MomentEstimate {
    double mean = 0;
    double std_error = 0;
    std::uint64_t samples = 0;
    double k = 0;
};

struct MonteCarloOptions {
    double max_abs_angle = std::numbers::pi;
};

/// Monte Carlo estimate of E|sum_{n <= x} X_n r(n)|^{2k}. Sample s draws
/// its prime angles from counter_uniform(seed, s, p), so the estimate is
/// independent of the thread count. Requires nsamples >= 100.
MomentEstimate mc_moment(double x, std::span<const std::complex<double>> r, double k,
                         std::uint64_t nsamples, std::uint64_t seed, const MonteCarloOptions& options = {});

/// sum_{n <= x} |r(n)|^2, which equals E|sum X_n r(n)|^2.
double exact_second_moment(double x, std::span<const std::complex<double>> r);

/// Coefficients c of (sum_{n <= x} r(n) n^{-s})^k as a dense vector on
/// [1, floor(x)^k]. Throws SizeError beyond 10^7 entries.
Coefficients dirichlet_power(double x, std::span<const std::complex<double>> r, unsigned k);

/// E|sum_{n <= x} X_n r(n)|^{2k} = sum_m |c_m|^2 with c = dirichlet_power.
double exact_moment(double x, std::span<const std::complex<double>> r, unsigned k);

struct QuadratureOptions {
    double relative_tolerance = 1e-6;
    unsigned max_depth = 12;
};

/// (1/T) int_0^T |sum_{n <= x} r(n) n^{it}|^{2k} dt by Gauss-Kronrod on
/// panels of width pi / (k log x). Throws IntegrationError when the summed
/// error estimate exceeds the tolerance.
double time_average_quadrature(double x, std::span<const std::complex<double>> r, unsigned k, double T,
                               const QuadratureOptions& options = {});

/// The same average in closed form through the Dirichlet power.
double time_average_closed_form(double x, std::span<const std::complex<double>> r, unsigned k, double T);

struct MomentTransferReport {
    double x = 0;
    unsigned k = 0;
    double T = 0;
    double time_average = 0;
    double expectation_estimate = 0;
    double expectation_std_error = 0;
    /// x^{2k} / T
    double bound = 0;
    double discrepancy = 0;
    /// discrepancy <= budget_constant * bound + 3 * std_error
    bool within_budget = false;
};

struct MomentTransferOptions {
    std::uint64_t nsamples = 100'000;
    std::uint64_t seed = 1;
    double budget_constant = 10.0;
    QuadratureOptions quadrature;
};

/// Time average versus Steinhaus expectation. k = 1 uses the closed form and
/// the exact expectation; k >= 2 uses quadrature and Monte Carlo.
MomentTransferReport moment_transfer_check(double x, unsigned k, double T,
                                           std::span<const std::complex<double>> r,
                                           const MomentTransferOptions& options = {});

struct SteeredSumReport {
    std::uint64_t psi = 0;
    double mean_relative_deviation = 0;
    double max_relative_deviation = 0;
    /// log x / log T
    double scale = 0;
    std::uint64_t samples = 0;
};

/// Draws X_p with |arg X_p| <= pi / log T for p <= y and compares
/// sum_{n <= x, y-friable} (X_n + 1) / 2 with Psi(x, y).
SteeredSumReport steered_friable_sum(double x, double y, double T, std::uint64_t nsamples, std::uint64_t seed);

}  // namespace lz::randmult
