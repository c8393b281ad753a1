#include <algorithm>
#include <limits>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "cli.hpp"
#include "largezeta/common.hpp"
#include "largezeta/friable.hpp"
#include "largezeta/galsum.hpp"
#include "largezeta/randmult.hpp"
#include "largezeta/resonance.hpp"
#include "largezeta/zeta_sum.hpp"

namespace lz::cli {

namespace {

using std::int64_t;
namespace rs = lz::resonance;
namespace gs = lz::galsum;

std::string join(const std::vector<std::string>& parts) {
    std::string s;
    for (const auto& p : parts) s += (s.empty() ? "" : "; ") + p;
    return s;
}

std::string num(double v) { return format_real(v); }

Check make_check(std::string name, bool passed, std::string detail) {
    return {std::move(name), passed, std::move(detail)};
}

ResultTable table(std::vector<std::string> columns) {
    ResultTable t;
    t.columns = std::move(columns);
    return t;
}

unsigned as_unsigned(const Params& p, const std::string& key, std::int64_t fallback) {
    const auto v = p.get_int(key, fallback);
    if (v < 0 || v > 4'000'000'000) throw UsageError(key + ": out of range");
    return static_cast<unsigned>(v);
}

// ---------------------------------------------------------------------------

CommandOutput cmd_zetasum(const Params& p) {
    const double x = p.require_double("x");
    const auto ts = p.has("t-grid") ? p.get_list("t-grid", {}) : p.get_list("t", {0.0});
    CommandOutput out;
    out.table = table({"t", "re", "im", "abs", "phase_error_bound"});
    std::vector<zsum::ZetaSumResult> results;
    if (p.has("y")) {
        const double y = p.get_double("y", 0);
        for (double t : ts) results.push_back(zsum::friable_zeta_sum(x, y, t));
        out.table.set_meta("y", num(y));
    } else if (ts.size() > 1 && std::is_sorted(ts.begin(), ts.end())) {
        results = zsum::batch_zeta_sums(x, ts);
    } else {
        for (double t : ts) results.push_back(zsum::zeta_sum(x, t));
    }
    for (const auto& r : results)
        out.table.add_row({r.t, r.value.real(), r.value.imag(), std::abs(r.value), r.phase_error_bound});
    out.table.set_meta("x", num(x));
    return out;
}

CommandOutput cmd_friable(const Params& p) {
    const auto xs = p.get_list("x", {});
    const auto ys = p.get_list("y", {});
    if (xs.empty() || ys.empty()) throw UsageError("friable: --x and --y are required");
    const std::string method = p.get_string("method", "both");
    if (method != "exact" && method != "estimate" && method != "both") throw UsageError("friable: bad --method");
    CommandOutput out;
    out.table = table({"x", "y", "psi_exact", "psi_estimate", "u"});
    for (double x : xs)
        for (double y : ys) {
            int64_t exact = -1;
            double est = std::nan("");
            if (method != "estimate") exact = int64_t(friable::psi_exact(x, y).count);
            if (method != "exact" && x >= 2 && y >= 2) est = friable::psi_estimate(x, y);
            const double u = (x > 1 && y > 1) ? std::log(x) / std::log(y) : std::nan("");
            out.table.add_row({x, y, exact, est, u});
        }
    return out;
}

CommandOutput cmd_dickman(const Params& p) {
    const auto us = p.get_list("u", {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
    const double tol = p.get_double("tolerance", 1e-9);
    CommandOutput out;
    out.table = table({"u", "rho"});
    for (double u : us) out.table.add_row({u, friable::dickman_rho(u, tol)});
    out.table.set_meta("tolerance", num(tol));
    return out;
}

// ---------------------------------------------------------------------------
// Resonance chain for one (T, x).

const std::vector<std::string> kResonanceColumns = {
    "T", "x", "y", "a_p", "primes", "log_R0", "log_R0_limit", "I1", "I1_tail", "I2", "I2_tail", "ratio",
    "sum_ak", "tail_budget", "chain_ok", "psi_0.9y", "sum_ak_ok", "thm13_threshold", "thm13_psi",
    "slack_vs_thm13", "warnings"};

void resonance_row(const Params& p, double T, double x, CommandOutput& out) {
    const double eps = p.get_double("epsilon", 0.2);
    const double delta = p.get_double("delta", 0.1);
    const double trunc = p.get_double("trunc", 1e250);
    const double budget = p.get_double("tail-budget", 1e-6);
    const auto res = rs::build_long_resonator(rs::make_params(T, x, eps, delta));
    const auto I1 = rs::eval_I1(res, T, trunc, budget);
    const auto I2 = rs::eval_I2(res, T, x, trunc, budget);
    const double sak = rs::sum_ak(x, res);
    const double ratio = I2.value / I1.value;
    const double tail = I2.tail_bound / I1.value;
    const bool chain_ok = ratio >= sak - tail;
    const double lR0 = rs::log_R0(res);
    const double lim = (0.5 - eps) * std::log(T);
    const auto psi09 = res.y * 0.9 >= 2 ? friable::psi_exact(x, 0.9 * res.y).count : std::uint64_t(1);
    const auto thm13 = rs::thm13_bound(T, x);
    std::vector<std::string> warnings = res.warnings;
    warnings.insert(warnings.end(), thm13.warnings.begin(), thm13.warnings.end());
    out.table.add_row({T, x, res.y, res.coefficient, int64_t(res.primes.size()), lR0, lim, I1.value, I1.tail_bound,
                       I2.value, I2.tail_bound, ratio, sak, tail, int64_t(chain_ok), int64_t(psi09),
                       int64_t(sak >= double(psi09)), thm13.threshold, thm13.psi, sak / thm13.psi, join(warnings)});
    const std::string where = "T=" + num(T) + " x=" + num(x);
    out.checks.push_back(make_check("resonance chain " + where, chain_ok,
                                    "I2/I1 = " + num(ratio) + ", sum a_k - tail = " + num(sak - tail)));
    out.checks.push_back(make_check("log R(0) bound " + where, lR0 <= lim, num(lR0) + " vs " + num(lim)));
    // sum a_k >= Psi(x, 0.9y) is asymptotic (a_p -> 1); at desk scale it is reported, not checked
}

CommandOutput cmd_resonate(const Params& p) {
    CommandOutput out;
    out.table = table(kResonanceColumns);
    resonance_row(p, p.require_double("T"), p.require_double("x"), out);
    out.table.set_meta("epsilon", num(p.get_double("epsilon", 0.2)));
    out.table.set_meta("delta", num(p.get_double("delta", 0.1)));
    out.table.set_meta("trunc", num(p.get_double("trunc", 1e250)));
    return out;
}

CommandOutput exp_resonance_chain(const Params& p) {
    CommandOutput out;
    out.table = table(kResonanceColumns);
    const auto Ts = p.get_list("T", {1e8, 1e10, 1e12});
    const auto xs = p.get_list("x", {20, 50, 100, 190});
    const bool regime_only = p.get_int("regime-only", 1) != 0;
    for (double T : Ts)
        for (double x : xs) {
            const double lT = std::log(T);
            if (regime_only && (x < lT || std::log(x) > std::sqrt(lT))) continue;
            resonance_row(p, T, x, out);
        }
    out.table.set_meta("epsilon", num(p.get_double("epsilon", 0.2)));
    out.table.set_meta("delta", num(p.get_double("delta", 0.1)));
    out.table.set_meta("trunc", num(p.get_double("trunc", 1e250)));
    out.table.set_meta("tail_budget", num(p.get_double("tail-budget", 1e-6)));
    return out;
}

CommandOutput exp_resonance_thm14(const Params& p) {
    CommandOutput out;
    out.table = table({"T", "x", "tau", "A", "tau_prime", "identity_residual", "log_bound", "bound", "regime"});
    const auto Ts = p.get_list("T", {1e8, 1e12, 1e20, 1e50});
    const auto xs = p.get_list("x", {1e3, 1e6});
    for (double T : Ts)
        for (double x : xs) {
            const double lT = std::log(T), lx = std::log(x);
            const double tau = rs::thm14_tau(lT, lx);
            const auto th = rs::solve_A(tau);
            // tau' against direct quadrature of its defining integral
            boost::math::quadrature::exp_sinh<double> integrator;
            const double direct = integrator.integrate([](double s) { return std::exp(-s) / (s * s); }, th.A,
                                                       std::numeric_limits<double>::infinity());
            const double residual = std::abs(th.tau_prime - direct);
            const double lb = rs::thm14_log_bound(lT, lx, th.A, th.tau, th.tau_prime);
            std::string regime = "tau = " + num(tau) + " (hypothesis tau = (log_2 T)^{o(1)} has no finite check)";
            out.table.add_row({T, x, tau, th.A, th.tau_prime, residual, lb, std::exp(lb), regime});
            out.checks.push_back(make_check("tau' identity T=" + num(T) + " x=" + num(x), residual < 1e-10, num(residual)));
        }
    return out;
}

CommandOutput exp_resonance_hough(const Params& p) {
    CommandOutput out;
    out.table = table({"T", "x", "a", "prime_lo", "prime_hi", "primes", "numerator", "denominator", "sum_r", "value",
                       "numerator_tail", "sqrt_x", "warnings"});
    const auto Ts = p.get_list("T", {1e30});
    const auto xs = p.get_list("x", {1e9, 1e10});
    const double trunc = p.get_double("trunc", 1e12);
    for (double T : Ts)
        for (double x : xs) {
            const auto h = rs::build_hough_resonator(T, x);
            const auto b = rs::hough_lower_bound(T, x, trunc, p.get_double("tail-budget", 1e-6));
            out.table.add_row({T, x, h.a, h.prime_lo, h.prime_hi, int64_t(h.primes.size()), b.numerator, b.denominator,
                               b.sum_r, b.value, b.numerator_tail_bound, std::sqrt(x), join(h.warnings)});
        }
    return out;
}

CommandOutput cmd_exp_resonance(const Params& p) {
    const std::string arm = p.get_string("arm", "chain");
    CommandOutput out;
    if (arm == "chain") out = exp_resonance_chain(p);
    else if (arm == "thm14") out = exp_resonance_thm14(p);
    else if (arm == "hough") out = exp_resonance_hough(p);
    else throw UsageError("exp-resonance: --arm must be chain, thm14 or hough");
    out.table.set_meta("arm", arm);
    return out;
}

// ---------------------------------------------------------------------------

const std::vector<std::string> kGalColumns = {
    "size", "min", "max", "ratio_ok", "gal_value", "random_baseline", "buckets", "max_bucket", "bound_on_max_sq",
    "closed_form_sq", "closed_form", "measured_constant", "lemma_constant", "theorem_constant", "warnings"};

gs::GalSet gal_input(const Params& p) {
    if (p.has("set")) return gs::load_gal_set(p.get_string("set", ""));
    if (p.has("elements")) {
        std::vector<std::uint64_t> v;
        for (double d : p.get_list("elements", {})) {
            if (!(d >= 1) || d != std::floor(d) || d > 9e15) throw UsageError("elements: positive integers expected");
            v.push_back(static_cast<std::uint64_t>(d));
        }
        return gs::make_gal_set(std::move(v));
    }
    return gs::divisor_set_construct(as_unsigned(p, "prime-count", 20), as_unsigned(p, "exponent-budget", 4),
                                     static_cast<std::uint64_t>(p.get_int("anchor", 1)));
}

void gal_row(const Params& p, const gs::GalSet& set, CommandOutput& out) {
    const double T = p.get_double("T", 1e8), x = p.get_double("x", 1e4);
    const auto rep = gs::thm15_lower_bound(T, x, set);
    const auto lo = set.elements.front(), hi = set.elements.back();
    double baseline = std::nan("");
    if (set.size() <= (hi - lo + 1) / 4 || hi - lo + 1 <= 10'000'000)
        baseline = gs::gal_sum(gs::random_gal_set(lo, hi, set.size(), p.get_seed()));
    const auto buckets = gs::bucket_set(set, T);
    std::size_t max_bucket = 0;
    for (const auto& b : buckets.buckets) max_bucket = std::max(max_bucket, b.elements.size());
    out.table.add_row({int64_t(set.size()), int64_t(lo), int64_t(hi), int64_t(set.ratio_ok), rep.gal_value, baseline,
                       int64_t(buckets.buckets.size()), int64_t(max_bucket), rep.bound_on_max_sq, rep.closed_form_sq,
                       rep.closed_form, rep.measured_constant, 2 * std::numbers::sqrt2, std::numbers::sqrt2,
                       join(rep.warnings)});
    out.table.set_meta("T", num(T));
    out.table.set_meta("x", num(x));
    out.table.set_meta("seed", std::to_string(p.get_seed()));
    if (p.has("store")) gs::store_gal_set(p.get_string("store", ""), set);
}

CommandOutput cmd_galsum(const Params& p) {
    CommandOutput out;
    out.table = table(kGalColumns);
    gal_row(p, gal_input(p), out);
    return out;
}

CommandOutput cmd_exp_galsum(const Params& p) {
    const std::string arm = p.get_string("arm", "search");
    CommandOutput out;
    if (arm == "search") {
        out.table = table({"lo", "hi", "N", "brute_force", "local_search", "equal"});
        const auto lo = static_cast<std::uint64_t>(p.get_int("lo", 10));
        const auto hi = static_cast<std::uint64_t>(p.get_int("hi", 20));
        const auto iters = static_cast<std::uint64_t>(p.get_int("iters", 100));
        gs::LocalSearchOptions opt;
        opt.restarts = as_unsigned(p, "restarts", 8);
        for (double n : p.get_list("sizes", {1, 2, 3, 4})) {
            const auto N = static_cast<std::size_t>(n);
            const auto bf = gs::brute_force_max_gal(lo, hi, N);
            const auto ls = gs::local_search_gal(lo, hi, N, iters, p.get_seed(), opt);
            const bool equal = std::abs(bf.value - ls.value) <= 1e-12 * bf.value;
            out.table.add_row({int64_t(lo), int64_t(hi), int64_t(N), bf.value, ls.value, int64_t(equal)});
            out.checks.push_back(make_check("local search <= brute force N=" + std::to_string(N),
                                            ls.value <= bf.value * (1 + 1e-12), num(ls.value) + " vs " + num(bf.value)));
        }
        out.table.set_meta("seed", std::to_string(p.get_seed()));
        out.table.set_meta("iters", std::to_string(iters));
    } else if (arm == "construct") {
        out.table = table(kGalColumns);
        const auto set = gal_input(p);
        gal_row(p, set, out);
        out.checks.push_back(make_check("constructed set ratio", set.ratio_ok, "max <= 2 min"));
    } else if (arm == "pairs") {
        out.table = table({"x", "lo", "hi", "pairs", "ratio_ok_pairs", "formula_mismatches", "floored_failures",
                           "unfloored_failures"});
        const auto lo = static_cast<std::uint64_t>(p.get_int("lo", 50));
        const auto hi = static_cast<std::uint64_t>(p.get_int("hi", 100));
        for (double x : p.get_list("x", {10, 100})) {
            int64_t pairs = 0, ok_pairs = 0, mism = 0, floored = 0, unfloored = 0;
            for (auto m = lo; m <= hi; ++m)
                for (auto n = lo; n <= hi; ++n) {
                    const auto c = gs::pair_count_bound_check(m, n, x);
                    ++pairs;
                    mism += c.formula_count != c.exact_count;
                    if (!c.ratio_ok) continue;
                    ++ok_pairs;
                    floored += c.floored_bound > c.exact_count;
                    unfloored += !c.unfloored_holds;
                }
            out.table.add_row({x, int64_t(lo), int64_t(hi), pairs, ok_pairs, mism, floored, unfloored});
            out.checks.push_back(make_check("pair count x=" + num(x), mism == 0 && floored == 0,
                                            std::to_string(mism) + " mismatches, " + std::to_string(floored) +
                                                " floored failures"));
        }
    } else {
        throw UsageError("exp-galsum: --arm must be search, construct or pairs");
    }
    out.table.set_meta("arm", arm);
    return out;
}

// ---------------------------------------------------------------------------

const std::vector<std::string> kMomentColumns = {"x", "k", "T", "time_average", "expectation", "std_error",
                                                 "bound", "discrepancy", "allowed", "within_budget"};

void moment_row(const Params& p, double x, unsigned k, double T, CommandOutput& out) {
    const auto r = randmult::constant_coefficients(static_cast<std::uint64_t>(std::floor(x)));
    randmult::MomentTransferOptions opt;
    opt.nsamples = static_cast<std::uint64_t>(p.get_int("samples", 100'000));
    opt.seed = p.get_seed();
    opt.budget_constant = p.get_double("budget-constant", 10.0);
    opt.quadrature.relative_tolerance = p.get_double("tolerance", 1e-6);
    const auto rep = randmult::moment_transfer_check(x, k, T, r, opt);
    const double allowed = opt.budget_constant * rep.bound + 3 * rep.expectation_std_error;
    out.table.add_row({x, int64_t(k), T, rep.time_average, rep.expectation_estimate, rep.expectation_std_error,
                       rep.bound, rep.discrepancy, allowed, int64_t(rep.within_budget)});
    out.checks.push_back(make_check("moment transfer x=" + num(x) + " k=" + std::to_string(k) + " T=" + num(T),
                                    rep.within_budget, num(rep.discrepancy) + " vs " + num(allowed)));
    out.table.set_meta("seed", std::to_string(opt.seed));
    out.table.set_meta("samples", std::to_string(opt.nsamples));
}

CommandOutput cmd_moments(const Params& p) {
    CommandOutput out;
    out.table = table(kMomentColumns);
    moment_row(p, p.require_double("x"), as_unsigned(p, "k", 1), p.require_double("T"), out);
    return out;
}

CommandOutput cmd_exp_moments(const Params& p) {
    CommandOutput out;
    out.table = table(kMomentColumns);
    for (double x : p.get_list("x", {1, 2, 10}))
        for (double k : p.get_list("k", {1, 2}))
            for (double T : p.get_list("T", {1e5})) {
                if (k < 1 || k != std::floor(k)) throw UsageError("k must be a positive integer");
                moment_row(p, x, unsigned(k), T, out);
            }
    return out;
}

// ---------------------------------------------------------------------------

CommandOutput exp_thm11_sample(const Params& p) {
    const double T = p.get_double("T", 1e7), x = p.get_double("x", 1e3);
    if (T > 1e8) throw UsageError("exp-thm11: the sampling arm is limited to T <= 1e8");
    const double y = p.get_double("y", resonance::thm11_y(std::log(T), std::log(x)));
    const double multiple = p.get_double("multiple", 1.0);
    const auto n = static_cast<std::uint64_t>(p.get_int("samples", 1000));
    const std::uint64_t seed = p.get_seed();
    const double scale = resonance::thm11_error_scale(std::log(T));
    const double psi = double(friable::psi_exact(x, y).count);

    CommandOutput out;
    out.table = table({"index", "t", "re_S", "im_S", "re_Psi", "im_Psi", "relative_deviation"});
    std::vector<double> dev(n);
    std::vector<std::complex<double>> S(n), F(n);
    std::vector<double> ts(n);
    for (std::uint64_t i = 0; i < n; ++i) ts[i] = 1.0 + (T - 1.0) * randmult::counter_uniform(seed, 0x11, i);
    for (std::uint64_t i = 0; i < n; ++i) {
        S[i] = zsum::zeta_sum(x, ts[i]).value;
        F[i] = zsum::friable_zeta_sum(x, y, ts[i]).value;
        dev[i] = std::abs(S[i] - F[i]) / psi;
    }
    std::uint64_t exceed = 0;
    double maxdev = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        out.table.add_row({int64_t(i), ts[i], S[i].real(), S[i].imag(), F[i].real(), F[i].imag(), dev[i]});
        exceed += dev[i] > multiple * scale;
        maxdev = std::max(maxdev, dev[i]);
    }
    out.table.set_meta("T", num(T));
    out.table.set_meta("x", num(x));
    out.table.set_meta("y", num(y));
    out.table.set_meta("seed", std::to_string(seed));
    out.table.set_meta("threshold", num(multiple * scale));
    out.table.set_meta("exceedance_fraction", num(n ? double(exceed) / double(n) : 0.0));
    out.table.set_meta("max_relative_deviation", num(maxdev));
    if (y >= std::floor(x))
        out.checks.push_back(make_check("y >= x gives zero error", maxdev == 0.0, "max deviation " + num(maxdev)));
    return out;
}

CommandOutput exp_thm11_formulas(const Params& p) {
    using Big = resonance::BigFloat;
    CommandOutput out;
    out.table = table({"log10_T", "log10_x", "y", "y_large", "k", "error_scale"});
    const Big ln10 = boost::multiprecision::log(Big(10));
    for (double lt : p.get_list("log10-T", {10, 100, 1000, 1e6}))
        for (double lx : p.get_list("log10-x", {3})) {
            const Big lT = Big(lt) * ln10, lX = Big(lx) * ln10;
            out.table.add_row({lt, lx, resonance::thm11_y(lT, lX).convert_to<double>(),
                               resonance::thm11_y_large(lT, lX).convert_to<double>(),
                               resonance::thm11_k(lT, lX).convert_to<double>(),
                               resonance::thm11_error_scale(lT).convert_to<double>()});
        }
    out.table.set_meta("precision", "50 decimal digits");
    return out;
}

CommandOutput cmd_exp_thm11(const Params& p) {
    const std::string arm = p.get_string("arm", "sample");
    CommandOutput out;
    if (arm == "sample") out = exp_thm11_sample(p);
    else if (arm == "formulas") out = exp_thm11_formulas(p);
    else throw UsageError("exp-thm11: --arm must be sample or formulas");
    out.table.set_meta("arm", arm);
    return out;
}

CommandOutput cmd_exp_thm12(const Params& p) {
    const auto xs = p.get_list("x", {1e3, 1e4, 1e5});
    const double y = p.get_double("y", 100);
    const auto thetas = p.get_list("theta", {std::numbers::pi / 2, -std::numbers::pi / 2, std::numbers::pi});
    const double c = p.get_double("bound-constant", 4.0);
    CommandOutput out;
    out.table = table({"theta", "x", "y", "psi", "re_sum", "im_sum", "E", "bound", "within"});
    for (double th : thetas) {
        if (std::abs(th) > std::numbers::pi * (1 + 1e-15)) throw UsageError("theta must lie in [-pi, pi]");
        double prev = INFINITY;
        bool monotone = true;
        auto sorted = xs;
        std::sort(sorted.begin(), sorted.end());
        for (double x : sorted) {
            const double psi = double(friable::psi_exact(x, y).count);
            const auto f = zsum::UnimodularCM::power(th, x);
            const auto s = zsum::twisted_friable_sum(x, y, f);
            const double E = th == 0 ? 0.0 : std::abs(s - std::polar(1.0, th) * psi) / psi;
            const double bound = c / std::log(x);
            out.table.add_row({th, x, y, psi, s.real(), s.imag(), E, bound, int64_t(E <= bound)});
            out.checks.push_back(make_check("|E| <= " + num(c) + "/log x at theta=" + num(th) + " x=" + num(x),
                                            E <= bound, num(E) + " vs " + num(bound)));
            monotone = monotone && E <= prev;
            prev = E;
        }
        out.checks.push_back(make_check("|E| non-increasing in x at theta=" + num(th), monotone, ""));
    }
    return out;
}

CommandOutput cmd_exp_pv_ratio(const Params& p) {
    const auto ts = p.get_list("t", {1e3, 1e4, 1e5, 1e6});
    const auto stride = static_cast<std::uint64_t>(p.get_int("stride", 1));
    CommandOutput out;
    out.table = table({"t", "ratio", "argmax", "samples"});
    for (double t : ts) {
        const auto r = zsum::polya_vinogradov_ratio(t, stride);
        out.table.add_row({t, r.ratio, int64_t(r.argmax), int64_t(r.samples)});
        if (p.has("max-ratio")) {
            const double m = p.get_double("max-ratio", 0);
            out.checks.push_back(make_check("ratio <= " + num(m) + " at t=" + num(t), r.ratio <= m, num(r.ratio)));
        }
    }
    out.table.set_meta("stride", std::to_string(stride));
    return out;
}

}  // namespace

const std::vector<CommandSpec>& command_specs() {
    static const std::vector<CommandSpec> specs = {
        {"zetasum", "S_t(x) = sum_{n<=x} n^{it} at one t, a list, or a grid",
         {{"x", "length of the sum"}, {"t", "frequency or comma list"}, {"t-grid", "lo:hi:n grid"},
          {"y", "restrict to y-friable n"}},
         cmd_zetasum},
        {"friable", "Psi(x, y) exactly and by the Dickman estimate",
         {{"x", "x or list"}, {"y", "y or list"}, {"method", "exact, estimate or both"}},
         cmd_friable},
        {"dickman", "Dickman rho on a list or grid of u", {{"u", "u list or lo:hi:n"}}, cmd_dickman},
        {"resonate", "long resonator moments I1, I2 and the chain for one (T, x)",
         {{"T", "height"}, {"x", "length"}, {"epsilon", "epsilon (default 0.2)"}, {"delta", "delta (default 0.1)"},
          {"tail-budget", "relative tail budget (default 1e-6)"}},
         cmd_resonate},
        {"galsum", "GCD sum of a set from a file, a list, or the divisor construction",
         {{"set", "file of integers"}, {"elements", "comma list"}, {"prime-count", "construction primes"},
          {"exponent-budget", "construction exponent budget"}, {"anchor", "construction anchor"},
          {"T", "height for buckets and bound"}, {"x", "length for the bound"}, {"store", "write the set here"}},
         cmd_galsum},
        {"moments", "time average versus Steinhaus moment for r = 1",
         {{"x", "length"}, {"k", "moment order"}, {"T", "height"}, {"samples", "Monte Carlo samples"},
          {"budget-constant", "C in C x^{2k}/T"}},
         cmd_moments},
        {"exp-thm11", "friable approximation of zeta sums (arms: sample, formulas)",
         {{"arm", "sample or formulas"}, {"T", "height"}, {"x", "length"}, {"y", "override the friable threshold"},
          {"samples", "number of t samples"}, {"multiple", "exceedance multiple of 1/(log_2 T)^2"},
          {"log10-T", "formula arm: log10 T list"}, {"log10-x", "formula arm: log10 x list"}},
         cmd_exp_thm11},
        {"exp-thm12", "direction steering with f(n) = n^{i theta / log x}",
         {{"x", "x list"}, {"y", "friable threshold"}, {"theta", "theta list (pi/2 etc.)"},
          {"bound-constant", "c in |E| <= c / log x"}},
         cmd_exp_thm12},
        {"exp-resonance", "resonance chain grid (arms: chain, thm14, hough)",
         {{"arm", "chain, thm14 or hough"}, {"T", "T list"}, {"x", "x list"}, {"epsilon", "epsilon"},
          {"delta", "delta"}, {"tail-budget", "relative tail budget"}, {"regime-only", "skip x outside [log T, exp(sqrt log T)]"}},
         cmd_exp_resonance},
        {"exp-galsum", "GCD-sum experiments (arms: search, construct, pairs)",
         {{"arm", "search, construct or pairs"}, {"lo", "range start"}, {"hi", "range end"}, {"sizes", "subset sizes"},
          {"iters", "swap cap per restart"}, {"restarts", "restarts"}, {"x", "x list (pairs) or length"},
          {"T", "height"}, {"set", "file of integers"}, {"elements", "comma list"},
          {"prime-count", "construction primes"}, {"exponent-budget", "construction exponent budget"},
          {"anchor", "construction anchor"}, {"store", "write the set here"}},
         cmd_exp_galsum},
        {"exp-moments", "moment transfer over an (x, k, T) grid",
         {{"x", "x list"}, {"k", "k list"}, {"T", "T list"}, {"samples", "Monte Carlo samples"},
          {"budget-constant", "C in C x^{2k}/T"}},
         cmd_exp_moments},
        {"exp-pv-ratio", "max_{x<t} |S_t(x)| / (sqrt t log t)",
         {{"t", "t list"}, {"stride", "x stride"}, {"max-ratio", "fail above this ratio"}},
         cmd_exp_pv_ratio},
    };
    return specs;
}

}  // namespace lz::cli
