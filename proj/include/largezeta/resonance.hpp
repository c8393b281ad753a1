#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace lz::resonance {

/// 50-digit software float for parameter formulas at astronomically large T,
/// where only logarithms of T and x are representable.
using BigFloat = boost::multiprecision::cpp_bin_float_50;

// ---------------------------------------------------------------------------
// Parameter formulas. All take log T and log x so that they stay meaningful
// far beyond the double range of T itself; Real is double or BigFloat.

/// log applied `times` times to exp(log_v): iterated_log(log T, 2) = log_3 T.
template <class Real>
Real iterated_log(Real log_v, int times) {
    using std::log;
    for (int i = 0; i < times; ++i) log_v = log(log_v);
    return log_v;
}

template <class Real>
struct ResonanceParams {
    Real log_T{};
    Real log_x{};
    double epsilon = 0.05;
    double delta = 0.01;
};

inline ResonanceParams<double> make_params(double T, double x, double epsilon, double delta) {
    return {std::log(T), std::log(x), epsilon, delta};
}

/// y = (1/4 - eps) log T log_2 T / max{log_2 x - log_3 T, log_3 T}.
template <class Real>
Real long_resonator_y(const ResonanceParams<Real>& p) {
    using std::log;
    const Real l2T = log(p.log_T), l3T = log(l2T), l2x = log(p.log_x);
    const Real denom = (l2x - l3T > l3T) ? Real(l2x - l3T) : l3T;
    return (Real(0.25) - Real(p.epsilon)) * p.log_T * l2T / denom;
}

/// a_p = 1 - log y / (log x (log_2 T)^{1 + delta}).
template <class Real>
Real long_resonator_coefficient(const ResonanceParams<Real>& p, const Real& y) {
    using std::log;
    using std::pow;
    const Real l2T = log(p.log_T);
    return Real(1) - log(y) / (p.log_x * pow(l2T, Real(1 + p.delta)));
}

/// Friable threshold slack * (1/4) log T log_2 T / max{log_2 x - log_3 T, log_3 T}.
template <class Real>
Real thm13_threshold(const Real& log_T, const Real& log_x, double slack = 1.0) {
    return long_resonator_y(ResonanceParams<Real>{log_T, log_x, 0.0, 0.0}) * Real(slack);
}

/// Threshold of the log x = (log T)^sigma corollary: slack * log T / (2 sigma).
template <class Real>
Real corollary_sigma_threshold(const Real& log_T, double sigma, double slack = 1.0) {
    return Real(slack) * log_T / Real(2 * sigma);
}

/// Threshold of the x = (log T)^A corollary: slack * (1/2) log T log_2 T / log_3 T.
template <class Real>
Real corollary_power_threshold(const Real& log_T, double slack = 1.0) {
    using std::log;
    const Real l2T = log(log_T);
    return Real(slack) * Real(0.5) * log_T * l2T / log(l2T);
}

/// Friable threshold y = log x log T (log_2 T)^5 of the friable approximation.
template <class Real>
Real thm11_y(const Real& log_T, const Real& log_x) {
    using std::log;
    using std::pow;
    return log_x * log_T * pow(log(log_T), 5);
}

/// Second threshold (log T + log^2 x)(log_2 T)^5.
template <class Real>
Real thm11_y_large(const Real& log_T, const Real& log_x) {
    using std::log;
    using std::pow;
    return (log_T + log_x * log_x) * pow(log(log_T), 5);
}

/// Moment order floor((1/3) log T / log x).
template <class Real>
Real thm11_k(const Real& log_T, const Real& log_x) {
    using std::floor;
    return floor(log_T / (Real(3) * log_x));
}

/// Error scale 1 / (log_2 T)^2.
template <class Real>
Real thm11_error_scale(const Real& log_T) {
    using std::log;
    const Real l2T = log(log_T);
    return Real(1) / (l2T * l2T);
}

/// tau with x = exp(tau sqrt(log T log_2 T)).
template <class Real>
Real thm14_tau(const Real& log_T, const Real& log_x) {
    using std::log;
    using std::sqrt;
    return log_x / sqrt(log_T * log(log_T));
}

/// log of sqrt(x) exp(slack A (tau + tau') sqrt(log T / log_2 T)).
template <class Real>
Real thm14_log_bound(const Real& log_T, const Real& log_x, double A, double tau, double tau_prime,
                     double slack = 1.0) {
    using std::log;
    using std::sqrt;
    return log_x / 2 + Real(slack * A * (tau + tau_prime)) * sqrt(log_T / log(log_T));
}

/// sqrt(L log_3 L / log_2 L) with L = log(T / x): the exponent scale of the
/// GCD-sum bound.
template <class Real>
Real thm15_exponent_scale(const Real& log_T_over_x) {
    using std::log;
    using std::sqrt;
    const Real l2 = log(log_T_over_x);
    return sqrt(log_T_over_x * log(l2) / l2);
}

// ---------------------------------------------------------------------------
// Long resonator.

/// Completely multiplicative a_k supported on y-friable k.
struct LongResonator {
    double y = 0;
    double coefficient = 0;  // the shared a_p (0 when the support is empty)
    std::vector<std::uint64_t> primes;
    std::vector<double> a;  // a_p, parallel to primes
    std::vector<std::string> warnings;

    /// a_k, zero unless k is y-friable.
    double weight(std::uint64_t k) const;
};

/// Builds y and a_p from the formulas above. Requires T > e^e and x >= 16.
/// Throws RegimeError when a_p falls outside (0, 1).
LongResonator build_long_resonator(const ResonanceParams<double>& params);

/// Resonator with an explicit support and coefficients (0 < a_p < 1).
LongResonator make_long_resonator(std::vector<std::uint64_t> primes, std::vector<double> a);

/// log R(0) = -sum_{p <= y} log(1 - a_p).
double log_R0(const LongResonator& res);

/// sum of a_k over y-friable k <= x.
double sum_ak(double x, const LongResonator& res);

/// Fourier transform of e^{-t^2} with the convention int phi(t) e^{-i t xi} dt.
inline double gaussian_hat(double xi) { return 1.7724538509055160273 * std::exp(-0.25 * xi * xi); }

/// min over sigma of N^{-sigma} prod_p (1 - w_p p^sigma)^{-1}, a bound for
/// sum_{n > N} w_n over the multiplicative w generated by the w_p.
struct RankinBound {
    double sigma = 0;
    double bound = 0;
};
RankinBound rankin_tail(std::span<const std::uint64_t> primes, std::span<const double> weights, double log_N);

/// A finite part of a positive double/triple sum together with a certified
/// bound on everything omitted: value <= exact <= value + tail_bound.
struct TruncatedSum {
    double value = 0;
    double tail_bound = 0;
    double truncation = 0;
    double rankin_sigma = 0;
    std::size_t terms = 0;
    std::size_t support_size = 0;
};

/// I_1 = (T / log T) sum_{l, n y-friable} a_l a_n phi_hat((T / log T) log(l / n)),
/// over l, n <= trunc. Throws TruncationError when tail_bound exceeds
/// tail_budget * value.
TruncatedSum eval_I1(const LongResonator& res, double T, double trunc, double tail_budget = 1e-6);

/// I_2 = (T / log T) sum_{k <= x} sum_{m, n} a_m a_n phi_hat((T / log T) log(m / (k n))).
TruncatedSum eval_I2(const LongResonator& res, double T, double x, double trunc, double tail_budget = 1e-6);

struct Thm13Bound {
    double threshold = 0;
    double psi = 0;
    bool exact = true;
    std::vector<std::string> warnings;
};

/// Psi(x, threshold) with the friable threshold of thm13_threshold; exact
/// counting up to x = 1e10, Dickman estimate beyond.
Thm13Bound thm13_bound(double T, double x, double slack = 1.0);

// ---------------------------------------------------------------------------
// Exponential integral.

/// E_1(x) = int_x^inf e^{-s} / s ds for x > 0.
double expint_e1(double x);

struct Theorem14Params {
    double A = 0;
    double tau = 0;
    double tau_prime = 0;
};

/// A with E_1(A) = tau (bracketed Newton-bisection), tau' = e^{-A}/A - tau.
Theorem14Params solve_A(double tau);

// ---------------------------------------------------------------------------
// Hough resonator.

/// r(p) = a / (sqrt(p) log p) on primes a^2 <= p <= e^{(log a)^2}, completely
/// multiplicative, with a = sqrt(log x log_2 x) and y = T / x.
struct HoughResonator {
    double T = 0;
    double x = 0;
    double y = 0;
    double a = 0;
    double prime_lo = 0;
    double prime_hi = 0;
    std::vector<std::uint64_t> primes;
    std::vector<double> r;
    std::vector<std::string> warnings;

    double weight(std::uint64_t n) const;
};

HoughResonator build_hough_resonator(double T, double x);

struct HoughBound {
    double value = 0;
    double numerator = 0;    // sum_{m <= y/x} r(m)^2
    double denominator = 0;  // sum_{n >= 1} r(n)^2 = prod (1 - r(p)^2)^{-1}
    double sum_r = 0;        // sum_{n <= x} r(n)
    double numerator_tail_bound = 0;
    bool truncated = false;
};

/// (sum_{m <= y/x} r(m)^2 / sum_n r(n)^2) * sum_{n <= x} r(n). The numerator
/// is summed over m <= min(y/x, trunc); throws TruncationError if the certified
/// remainder exceeds tail_budget times the computed part.
HoughBound hough_lower_bound(double T, double x, double trunc, double tail_budget = 1e-6);

/// Left side of the rearrangement: sum over m, n <= y and k <= x with n = k m
/// of r(m) r(n). r[i - 1] = r(i) on [1, y].
template <class V>
V rearrangement_lhs(std::span<const V> r, std::uint64_t x, std::uint64_t y) {
    V total{};
    for (std::uint64_t m = 1; m <= y; ++m)
        for (std::uint64_t k = 1; k <= x && k * m <= y; ++k) total += r[m - 1] * r[k * m - 1];
    return total;
}

/// Right side: sum_{n <= x} sum_{m <= y / n} r(m) r(m n).
template <class V>
V rearrangement_rhs(std::span<const V> r, std::uint64_t x, std::uint64_t y) {
    V total{};
    for (std::uint64_t n = 1; n <= x; ++n)
        for (std::uint64_t m = 1; m <= y / n; ++m) total += r[m - 1] * r[m * n - 1];
    return total;
}

}  // namespace lz::resonance
