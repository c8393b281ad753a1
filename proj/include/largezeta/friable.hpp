#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace lz::friable {

/// Psi(x, y): the number of y-friable integers n <= x.
struct FriableCount {
    double x = 0;
    double y = 0;
    std::uint64_t count = 0;
};

struct PsiOptions {
    /// Upper bound on memoized (floor(x), prime index) entries. When the
    /// cache is full, further subproblems are counted without memoization.
    std::size_t memo_budget = 1u << 22;
};

/// Exact Psi(x, y) by the Buchstab-type recurrence
///   Psi(N, k) = 1 + sum_{j<=k} Psi(floor(N / p_j), j),
/// where Psi(N, k) counts n <= N built from the first k primes.
FriableCount psi_exact(double x, double y, const PsiOptions& options = {});

/// Samples of the Dickman function on the grid u = i * step, i = 0..n.
struct DickmanTable {
    double u_max = 0;
    double step = 0;
    std::vector<double> values;
    /// Estimated absolute error per sample (difference to a half-step table).
    double tolerance = 0;

    /// rho at an arbitrary u in [0, u_max], integrated from the nearest grid
    /// point below with the same fourth-order rule.
    double operator()(double u) const;
};

/// Integrates u rho'(u) = -rho(u - 1), rho = 1 on [0, 1], with a Simpson
/// (RK4 for a right-hand side free of rho(u)) step. Delayed values between
/// grid points come from cubic Hermite interpolation, using rho' from the
/// equation itself. steps_per_unit must be >= 2.
DickmanTable build_dickman_table(double u_max, unsigned steps_per_unit = 1024);

/// rho(u) to absolute error tol (tol >= 1e-12). Throws DomainError for u < 0.
double dickman_rho(double u, double tol = 1e-9);

/// x * rho(log x / log y).
double psi_estimate(double x, double y);

struct PsiRatioReport {
    std::uint64_t psi1 = 0;
    std::uint64_t psi2 = 0;
    /// |Psi(x, y2) - Psi(x, y1)| / Psi(x, y2)
    double relative_gap = 0;
};

PsiRatioReport psi_ratio_report(double x, double y1, double y2);

}  // namespace lz::friable
