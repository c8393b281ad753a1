#include "largezeta/double_double.hpp"

#include <quadmath.h>

namespace lz {

namespace {

DoubleDouble split(__float128 v) {
    const double hi = static_cast<double>(v);
    return {hi, static_cast<double>(v - hi)};
}

// 2*pi = kTwoPi0 + kTwoPi1 + kTwoPi2
constexpr double kTwoPi0 = 6.283185307179586232e+00;
constexpr double kTwoPi1 = 2.449293598294706414e-16;
constexpr double kTwoPi2 = -5.989539619436679332e-33;
constexpr double kInvTwoPi = 0.15915494309189534561;
constexpr double kPi = 3.14159265358979323846;

}  // namespace

DoubleDouble log_dd(std::uint64_t n) { return split(logq(static_cast<__float128>(n))); }

DoubleDouble log_ratio_dd(std::uint64_t num, std::uint64_t den) {
    return split(logq(static_cast<__float128>(num)) - logq(static_cast<__float128>(den)));
}

double reduce_phase(double t, DoubleDouble L) {
    // t*L = p.hi + p.lo + t*L.lo exactly up to the last rounding of t*L.lo.
    const DoubleDouble p = two_prod(t, L.hi);
    const double tail = std::fma(t, L.lo, p.lo);
    const double k = std::nearbyint(p.hi * kInvTwoPi);
    // k * kTwoPi0 exactly, then peel off the lower parts.
    const DoubleDouble kc = two_prod(k, kTwoPi0);
    double r = (p.hi - kc.hi);  // exact: p.hi and kc.hi agree in their leading bits
    r = r - kc.lo;
    r = r + tail;
    r = r - k * kTwoPi1;
    r = r - k * kTwoPi2;
    // k from a rounded quotient may be off by one.
    if (r > kPi) r -= 2 * kPi;
    else if (r < -kPi) r += 2 * kPi;
    return r;
}

}  // namespace lz
