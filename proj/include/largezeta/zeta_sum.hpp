#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "largezeta/double_double.hpp"

namespace lz::zsum {

/// Largest |t| accepted by the phase kernels.
inline constexpr double kMaxFrequency = 1e15;

/// S_t(x) = sum_{n <= x} n^{it}, summed over n <= floor(x).
struct ZetaSumResult {
    std::complex<double> value;
    double x = 0;
    double t = 0;
    /// Bound on the per-term absolute error; |value| <= floor(x) * (1 + bound).
    double phase_error_bound = 0;
};

/// ln n for n = 0..N as double-doubles (entry 0 unused).
std::vector<DoubleDouble> log_table(std::uint64_t N);

/// Throws PrecisionError for |t| > kMaxFrequency, DomainError for x < 1.
ZetaSumResult zeta_sum(double x, double t);

/// Sum of n^{it} over y-friable n <= x.
ZetaSumResult friable_zeta_sum(double x, double y, double t);

/// S_t(x) for every t of an ascending grid, in grid order. Arithmetic stretches
/// of the grid are evaluated by rotating n^{it} by n^{i delta}, restarting
/// from an exact phase every 256 points.
std::vector<ZetaSumResult> batch_zeta_sums(double x, std::span<const double> t_grid);

/// Completely multiplicative f with |f(n)| = 1, stored as a phase map.
class UnimodularCM {
public:
    /// f(n) = n^{i theta / log scale_x}.
    static UnimodularCM power(double theta, double scale_x);
    /// f(p) = e^{i phase[p]}; primes absent from the map have phase 0.
    static UnimodularCM prime_phases(std::map<std::uint64_t, double> phases);

    /// arg f(n) as a real (not reduced mod 2 pi).
    double angle(std::uint64_t n) const;
    std::complex<double> operator()(std::uint64_t n) const { return std::polar(1.0, angle(n)); }

private:
    bool power_form_ = true;
    double log_rate_ = 0;  // theta / log scale_x
    std::map<std::uint64_t, double> phases_;
};

/// sum_{n <= x, n y-friable} f(n), accumulated in ascending n.
std::complex<double> twisted_friable_sum(double x, double y, const UnimodularCM& f);

/// (1/T) int_0^T |sum_{n <= N} r(n) n^{it}|^2 dt in closed form, with
/// r[n - 1] = r(n). O(N^2).
double time_average_second_moment(std::span<const std::complex<double>> r, double T);

/// (1/T) int_0^T |S_t(x)|^2 dt in closed form.
double mean_square_exact(double x, double T);

struct PolyaVinogradovRatio {
    double ratio = 0;          // max |S_t(x)| / (sqrt(t) log t) over sampled x
    std::uint64_t argmax = 0;  // the maximizing x
    std::uint64_t samples = 0;
};

/// Scans integer x < t in steps of `stride` (x = stride, 2*stride, ...).
/// Halving the stride samples a superset, so the ratio cannot decrease.
PolyaVinogradovRatio polya_vinogradov_ratio(double t, std::uint64_t stride = 1);

}  // namespace lz::zsum
