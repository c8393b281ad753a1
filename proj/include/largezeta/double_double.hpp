#pragma once

#include <cmath>
#include <cstdint>

namespace lz {

/// Unevaluated sum hi + lo with |lo| <= ulp(hi) / 2, about 31 significant
/// digits. Only the handful of operations the phase kernels need.
struct DoubleDouble {
    double hi = 0;
    double lo = 0;
};

inline DoubleDouble two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline DoubleDouble quick_two_sum(double a, double b) {
    const double s = a + b;
    return {s, b - (s - a)};
}

inline DoubleDouble two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline DoubleDouble operator+(DoubleDouble a, DoubleDouble b) {
    DoubleDouble s = two_sum(a.hi, b.hi);
    DoubleDouble t = two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline DoubleDouble operator-(DoubleDouble a) { return {-a.hi, -a.lo}; }
inline DoubleDouble operator-(DoubleDouble a, DoubleDouble b) { return a + (-b); }

/// ln n to double-double precision (computed in binary128).
DoubleDouble log_dd(std::uint64_t n);

/// ln(num / den) to double-double precision.
DoubleDouble log_ratio_dd(std::uint64_t num, std::uint64_t den);

/// (t * L) reduced to [-pi, pi], where t is an exact double and L a
/// double-double. The product is formed exactly (fma) and reduced against a
/// triple-double 2*pi; the absolute error stays at a few ulp(pi) for
/// |t * L| up to ~1e17.
double reduce_phase(double t, DoubleDouble L);

/// Neumaier-compensated accumulator.
struct CompensatedSum {
    double sum = 0;
    double carry = 0;

    void add(double v) {
        const double s = sum + v;
        if (std::abs(sum) >= std::abs(v))
            carry += (sum - s) + v;
        else
            carry += (v - s) + sum;
        sum = s;
    }
    double value() const { return sum + carry; }
};

}  // namespace lz
