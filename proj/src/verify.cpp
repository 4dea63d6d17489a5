#include "paircorr/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "paircorr/arithmetic.hpp"
#include "paircorr/csv.hpp"
#include "paircorr/form_factor.hpp"
#include "paircorr/formulas.hpp"
#include "paircorr/oscillatory.hpp"
#include "paircorr/smoothing.hpp"

namespace paircorr::verify {

namespace {

constexpr double kPi = std::numbers::pi;

// Built on first use and shared by every suite of one run.
class Resources {
public:
    explicit Resources(const Context& ctx) : ctx_(ctx) {}

    const arith::PrimeSieve& sieve() {
        if (!sieve_) sieve_ = std::make_unique<arith::PrimeSieve>(ctx_.sieve_limit);
        return *sieve_;
    }
    const singular::SingularTable& table() {
        if (!table_) table_ = std::make_unique<singular::SingularTable>(ctx_.hmax, ctx_.constants, sieve());
        return *table_;
    }
    const Context& ctx() const { return ctx_; }

private:
    const Context& ctx_;
    std::unique_ptr<arith::PrimeSieve> sieve_;
    std::unique_ptr<singular::SingularTable> table_;
};

using Checks = std::vector<Check>;

void add(Checks& out, std::string name, double observed, double bound) {
    // NaN observations fail.
    out.push_back({std::move(name), observed, bound, observed <= bound});
}

double rel_diff(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

std::string tag(double v) { return fmt::format("{:g}", v); }

void arithmetic_suite(Resources& r, Checks& out) {
    const auto& sv = r.sieve();
    std::uint32_t spf_bad = 0, lambda_bad = 0;
    for (std::uint32_t n = 2; n <= 10'000; ++n) {
        std::uint32_t p = 2;
        while (n % p != 0) ++p;
        if (sv.smallest_prime_factor(n) != p) ++spf_bad;
        std::uint32_t m = n;
        while (m % p == 0) m /= p;
        const bool prime_power = m == 1;
        if ((arith::von_mangoldt(n, sv) > 0) != prime_power) ++lambda_bad;
    }
    if (arith::von_mangoldt(1, sv) != 0) ++lambda_bad;
    add(out, "sieve_spf_trial_division_1e4", spf_bad, 0);
    add(out, "von_mangoldt_prime_powers_1e4", lambda_bad, 0);

    for (double x : {1e4, 1e5, 1e6}) {
        const double s = arith::lambda_square_sum(std::uint64_t(x), sv);
        add(out, "lambda_square_sum_x" + tag(x),
            std::abs(s - arith::lambda_square_sum_main(x)) / std::pow(x, 1.6), 3.0);
    }
    for (double x : {1e2, 1e3}) {
        const auto t = arith::lambda_square_tail(std::uint64_t(x), sv.limit(), sv);
        const double res = std::abs(t.value - arith::lambda_square_tail_main(x)) + t.remainder_bound;
        add(out, "lambda_square_tail_x" + tag(x), res * std::pow(x, 2.4), 3.0);
    }
    const double s2 = singular::singular_series(2, r.ctx().constants, sv);
    const double N = 1e6;
    add(out, "twin_sum_d2_rel_error_1e6", std::abs(arith::twin_sum(std::uint64_t(N), 2, sv) / (s2 * N) - 1), 0.1);
    for (int d : {1, 3, 7}) {
        add(out, fmt::format("twin_sum_d{}_1e6", d), arith::twin_sum(std::uint64_t(N), d, sv) / N, 0.02);
    }
}

void singular_suite(Resources& r, Checks& out) {
    const auto& sv = r.sieve();
    const auto& tb = r.table();
    const auto& C = r.ctx().constants;

    std::uint32_t odd_bad = 0;
    for (std::uint32_t h = 1; h <= tb.hmax(); h += 2) odd_bad += tb.value(h) != 0.0;
    add(out, "odd_h_vanish", odd_bad, 0);

    const double s2 = singular::singular_series(2, C, sv);
    double worst = 0.0;
    for (int k = 1; k <= 20; ++k) worst = std::max(worst, rel_diff(singular::singular_series(1ull << k, C, sv), s2));
    add(out, "powers_of_two_equal_s2", worst, 1e-14);

    for (int alpha : {1, 2}) {
        for (double y : {10.0, 100.0, 1000.0}) {
            const double ya = std::pow(y, alpha);
            const double rhs = -ya / (2 * alpha) + tb.partial_sum_fluctuation(y) * ya -
                               alpha * tb.epsilon_moment(alpha - 1, 1.0, y) + (0.5 / alpha + alpha / (alpha + 1.0));
            add(out, fmt::format("weighted_sum_identity_a{}_y{}", alpha, tag(y)),
                rel_diff(tb.weighted_sum_excess(y, alpha), rhs), 1e-8);
        }
    }
    for (double y : {10.0, 1000.0}) {
        const double lhs = tb.epsilon_moment(1, 1.0, y);
        const double rhs = C.B / 4 * y * y + y * tb.fluctuation_integral(y) - tb.fluctuation_double_integral(y) - C.B / 4;
        add(out, "first_moment_identity_y" + tag(y), rel_diff(lhs, rhs), 1e-8);
    }
    const double ymax = tb.hmax();
    for (double y : {10.0, 100.0}) {
        const double lhs = tb.epsilon_moment(-3, y, ymax);
        const double rhs = C.B / 4 * (1 / (y * y) - 1 / (ymax * ymax)) + tb.fluctuation_integral(ymax) / std::pow(ymax, 3) -
                           tb.fluctuation_integral(y) / std::pow(y, 3) + 3 * tb.fluctuation_tail_moment(y).value;
        add(out, "inverse_cube_moment_identity_y" + tag(y), std::abs(lhs - rhs), 1e-8);
    }
    for (double h : {1e3, 1e4, 1e5, 1e6}) {
        if (h > tb.hmax()) continue;
        const auto c = tb.weighted_partial_sum_check(std::uint32_t(h));
        add(out, "weighted_partial_sum_h" + tag(h), std::abs(c.residual) / std::pow(h, 0.6), 5.0);
    }
    for (double y : {1e3, 1e4, 1e5, 1e6}) {
        if (y > tb.hmax()) continue;
        const double integral = tb.epsilon_moment(0, 1.0, y);
        add(out, "fluctuation_integral_growth_y" + tag(y), std::abs(integral - C.B / 2 * y) / std::pow(y, 0.6), 5.0);
    }
    const double H = tb.hmax();
    const double lhs = tb.reciprocal_square_sum(H) + 1.0 / H;
    const auto tail = tb.fluctuation_tail_moment(1.0);
    const double rhs = 7.0 / 4 + C.B / 2 + 6 * tail.value;
    add(out, "reciprocal_square_sum_limit", std::abs(lhs - rhs), 1e-4);
}

void smoothing_suite(Checks& out) {
    const auto w = smooth::SmoothWeight::from_scale(10.0, 4);
    const double delta = w.delta();
    const int K = w.K();
    const double reach = (K + 1) * delta;

    std::vector<double> knots;
    for (int m = 0; m <= K + 1; ++m) {
        knots.push_back(-reach + 2 * m * delta);
        knots.push_back(1 - reach + 2 * m * delta);
    }
    osc::QuadratureSpec spec;
    spec.abs_tol = 1e-13;
    spec.rel_tol = 1e-13;
    auto transform = [&](double y) {
        const double f = 2 * kPi * y;
        const double re = osc::adaptive_osc_quad([&](double t) { return w.psi(t) * std::cos(f * t); }, -reach,
                                                 1 + reach, spec, knots, f)
                              .value;
        const double im = osc::adaptive_osc_quad([&](double t) { return w.psi(t) * std::sin(f * t); }, -reach,
                                                 1 + reach, spec, knots, f)
                              .value;
        return std::complex<double>(re, im);
    };
    add(out, "psi_mass", std::abs(transform(0.0).real() - w.psi_hat(0.0).real()), 1e-9);

    double worst_ft = 0.0;
    for (int k = 0; k < 20; ++k) {
        const double y = 0.05 + 2.5 * k;
        worst_ft = std::max(worst_ft, std::abs(transform(y) - w.psi_hat(y)));
    }
    add(out, "psi_hat_vs_quadrature_20pts", worst_ft, 1e-8);

    std::uint32_t range_bad = 0, shape_bad = 0;
    for (int i = 0; i <= K + 1; ++i) {
        const double half = std::ldexp(delta, std::max(i - 1, 0));
        for (int s = 0; s <= 10'000; ++s) {
            const double t = -0.1 + 1.2 * s / 10'000.0;
            const double v = w.chi(i, t);
            if (!(v >= 0.0 && v <= 1.0)) ++range_bad;
            if (i == 0) continue;
            if (t >= half && t <= 1 - half && v != 1.0) ++shape_bad;
            if ((t < -half || t > 1 + half) && v != 0.0) ++shape_bad;
        }
    }
    add(out, "chi_range", range_bad, 0);
    add(out, "chi_plateau_and_support", shape_bad, 0);

    for (double m : {2.0, 10.0}) {
        const double y = m / delta;
        const double bound = 1.0 / (kPi * y) * std::pow(2 * kPi * delta * y, -(K + 1));
        add(out, fmt::format("psi_hat_decay_y{}_over_delta", tag(m)), std::abs(w.psi_hat(y)), bound);
    }

    double worst_ratio = 0.0;
    for (const auto& d : smooth::verify_derivative_bounds(w)) worst_ratio = std::max(worst_ratio, d.max_estimate / d.bound);
    add(out, "chi_derivative_bounds", worst_ratio, 1.0 + 1e-3);

    // T*Delta <= x for both K = 4 and K = 5 at U = 10.
    const double T = 1000.0, x = 10.0;
    const auto w5 = smooth::SmoothWeight::from_scale(10.0, 5);
    for (int n : {1, 2, 3}) {
        const auto c4 = smooth::verify_lemma_2_5(n, T, x, w);
        const auto c5 = smooth::verify_lemma_2_5(n, T, x, w5);
        add(out, fmt::format("sinc_power_smoothing_n{}", n), std::abs(c4.difference), 10 * c4.error_scale);
        add(out, fmt::format("sinc_power_smoothing_shrinks_n{}", n), std::abs(c5.difference), std::abs(c4.difference));
    }
    osc::DecayingIntegrand F;
    F.fn = [](double y) { return 1.0 / (y * y); };
    F.decay_constant = 1.0;
    F.decay_exponent = 2.0;
    const auto g4 = smooth::verify_lemma_2_6(F, T, x, w);
    const auto g5 = smooth::verify_lemma_2_6(F, T, x, w5);
    add(out, "decaying_smoothing", std::abs(g4.difference), 10 * g4.error_scale);
    add(out, "decaying_smoothing_shrinks", std::abs(g5.difference), std::abs(g4.difference));
}

void oscillatory_suite(Checks& out) {
    osc::QuadratureSpec spec;
    spec.abs_tol = 1e-12;
    spec.rel_tol = 1e-13;
    spec.max_subdivisions = 400000;
    for (int n : {1, 2, 3}) {
        for (double a : {0.1, 1.0, 5.0, 20.0}) {
            // |int_Y^inf sin(a y)/y^{2n}| <= 2/(a Y^{2n})
            const double Y = std::pow(2.0 / (a * 1e-12), 1.0 / (2 * n));
            const auto q = osc::adaptive_osc_quad([&](double y) { return std::sin(a * y) * std::pow(y, -2 * n); }, 1.0, Y,
                                                  spec, {}, a);
            add(out, fmt::format("sin_even_power_tail_n{}_a{}", n, tag(a)),
                std::abs(q.value - osc::sin_over_even_power_tail(n, a)), 1e-8);
        }
    }
    const double h = 1e-4;
    double worst_si = 0.0, worst_ci = 0.0;
    for (double x : {0.3, 1.0, 2.5, 3.99, 4.01, 7.0, 15.0, 60.0, 250.0}) {
        const double dsi = (osc::sine_integral(x + h) - osc::sine_integral(x - h)) / (2 * h);
        const double dci = (osc::cosine_integral(x + h) - osc::cosine_integral(x - h)) / (2 * h);
        worst_si = std::max(worst_si, std::abs(dsi - std::sin(x) / x));
        worst_ci = std::max(worst_ci, std::abs(dci - std::cos(x) / x));
    }
    add(out, "si_derivative", worst_si, 1e-6);
    add(out, "ci_derivative", worst_ci, 1e-6);

    osc::DecayingIntegrand F;
    F.fn = [](double y) { return 1.0 / (y * y); };
    F.decay_constant = 1.0;
    F.decay_exponent = 2.0;
    std::vector<double> values;
    for (double a = 1.0; a >= 1.0 / 64; a /= 2) values.push_back(osc::sinc_weighted_integral(F, a).value);
    std::uint32_t not_decreasing = 0;
    for (std::size_t i = 2; i < values.size(); ++i) {
        if (std::abs(values[i] - values[i - 1]) >= std::abs(values[i - 1] - values[i - 2])) ++not_decreasing;
    }
    add(out, "sinc_weighted_small_a_convergence", not_decreasing, 0);
    // int_1^inf (1 - sinc(a y))/y^2 dy = a pi/4 + O(a^2)
    const double a_last = 1.0 / 64;
    add(out, "sinc_weighted_small_a_slope", std::abs((1.0 - values.back()) / a_last - kPi / 4), 0.02);
}

void paircorr_suite(Resources& r, Checks& out) {
    const auto& real = r.ctx().zeros;
    auto first = [&](std::size_t n) {
        if (real && real->size() >= n) {
            return zeros::make_dataset({real->ordinates.begin(), real->ordinates.begin() + std::ptrdiff_t(n)},
                                       real->source_label);
        }
        return zeros::make_dataset(zeros::synthetic_ordinates(n), "synthetic");
    };

    const auto small = first(1000);
    const double T = small.max_height;
    pc::DirectOptions exact;
    exact.exact = true;
    for (double x : {2.0, std::numbers::e, 10.0, 1000.0}) {
        const auto d = pc::f_direct(small, x, T, exact);
        const auto q = pc::f_integral(small, x, T);
        add(out, "direct_vs_integral_x" + tag(x), std::abs(d.value - q.value), 1e-6 + q.truncation_error_bound);
        add(out, "integral_nonnegative_x" + tag(x), -q.value, 0.0);
    }
    double odd_part = 0.0;
    for (double L : {0.3, 1.0, 2.0, 5.0}) {
        odd_part = std::max(odd_part, std::abs(pc::f_direct_log(small, L, T, exact).value -
                                               pc::f_direct_log(small, -L, T, exact).value));
    }
    add(out, "even_in_log_x", odd_part, 1e-9 * double(small.size()));

    const auto big = first(10'000);
    const double Tb = big.max_height;
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> log_x(std::log(1.5), std::log(1e4));
    std::uniform_real_distribution<double> log_cut(std::log(5.0), std::log(500.0));
    double worst = 0.0;
    double worst_negative = 0.0;
    for (int k = 0; k < 20; ++k) {
        const double x = std::exp(log_x(rng));
        pc::DirectOptions banded;
        banded.gap_cutoff = std::exp(log_cut(rng));
        const auto e = pc::f_direct(big, x, Tb, exact);
        const auto b = pc::f_direct(big, x, Tb, banded);
        worst = std::max(worst, std::abs(b.value - e.value) / b.truncation_error_bound);
        worst_negative = std::max(worst_negative, -b.value / b.truncation_error_bound);
    }
    add(out, "banded_within_bound_20_draws", worst, 1.0);
    add(out, "direct_not_below_minus_bound", worst_negative, 1.0);

    if (real && real->size() >= 100'000) {
        const auto& zs = *real;
        const double Th = zs.ordinates[99'999];
        const double x = std::sqrt(Th);
        const double l = std::log(Th / (2 * kPi));
        const double predicted = std::log(x) + (l * l - 2 * l) / (x * x);
        const double observed = pc::f_direct(zs, x, Th).value * 2 * kPi / Th;
        add(out, "montgomery_regime_sqrt_T", std::abs(observed / predicted - 1), 0.15);
    }
}

void formulas_suite(Resources& r, Checks& out) {
    const auto& tb = r.table();
    {
        const double T = 1e4;
        for (double e : {1.2, 1.4, 1.6, 1.8}) {
            const double x = std::pow(T, e);
            const auto b = formulas::theorem1({T, x}, tb);
            add(out, "recombination_exact_e" + tag(e), std::abs(b.total - b.recombine()), 0.0);
            add(out, "reduces_to_t_log_t_e" + tag(e),
                std::abs(b.total - formulas::corollary2_rhs(T)) / (T * std::pow(T / x, 0.4)), 1.0);
            if (e == 1.8) {
                const double limit = 7.0 / 4 + tb.constants().B / 2 + 6 * tb.fluctuation_tail_moment(1.0).value;
                add(out, "singular_factor_limit", std::abs(b.singular_sum - limit), 1e-4);
            }
        }
    }
    {
        const double T = 1e6;
        const double lt = std::log(T);
        for (int k : {3, 4, 0}) {
            const double x = k ? T / std::pow(lt, k) : T;
            const auto b = formulas::theorem1({T, x}, tb);
            add(out, k ? fmt::format("log_x_leading_x_T_over_log{}", k) : std::string("log_x_leading_x_T"),
                std::abs(b.total - b.leading) / x, 3.0);
        }
    }
    {
        // The x^{-2} term of the Montgomery formula is only small next to the
        // error budget once T is large; 1e10 puts x near 1.5e3.
        const double T = 1e10;
        const double x = T / std::pow(std::log(T), 5) * (1 + 1e-12);
        const auto b = formulas::theorem1({T, x}, tb);
        add(out, "agrees_with_montgomery_low_x", std::abs(b.total - formulas::montgomery_rhs(x, T)),
            std::max(3 * x, b.error_budget));
    }
    const double alpha = 0.01;
    const double taylor = kPi * kPi * alpha * alpha * alpha / 9;
    add(out, "gue_integral_small_alpha", rel_diff(formulas::gue_integral(alpha), taylor), 1e-4);
    add(out, "gue_integral_zero", std::abs(formulas::gue_integral(0.0)), 0.0);

    std::uint32_t branch_bad = 0;
    const double T = 1e4;
    branch_bad += formulas::conjecture_piecewise(2.0, T, 0.01).branch != 1;
    branch_bad += formulas::conjecture_piecewise(T, T, 0.01).branch != 1;
    branch_bad += formulas::conjecture_piecewise(std::pow(T, 1.2), T, 0.25).branch != 2;
    branch_bad += formulas::conjecture_piecewise(std::pow(T, 1.2), T, 0.01).branch != 3;
    add(out, "piecewise_branches", branch_bad, 0);
    const double jump = std::abs(formulas::conjecture_piecewise(T, T, 0.01).value -
                                 formulas::conjecture_piecewise(T * (1 + 1e-9), T, 0.01).value);
    add(out, "piecewise_boundary_jump", jump, T);
}

}  // namespace

std::optional<Suite> parse_suite(std::string_view name) {
    static constexpr std::array<std::pair<std::string_view, Suite>, 7> names{{
        {"arithmetic", Suite::arithmetic},
        {"singular", Suite::singular},
        {"smoothing", Suite::smoothing},
        {"oscillatory", Suite::oscillatory},
        {"paircorr", Suite::paircorr},
        {"formulas", Suite::formulas},
        {"all", Suite::all},
    }};
    for (const auto& [n, s] : names) {
        if (n == name) return s;
    }
    return std::nullopt;
}

std::string_view suite_name(Suite s) {
    switch (s) {
        case Suite::arithmetic: return "arithmetic";
        case Suite::singular: return "singular";
        case Suite::smoothing: return "smoothing";
        case Suite::oscillatory: return "oscillatory";
        case Suite::paircorr: return "paircorr";
        case Suite::formulas: return "formulas";
        case Suite::all: return "all";
    }
    return "?";
}

Context Context::standard(std::uint32_t sieve_limit, std::uint32_t hmax) {
    const arith::PrimeSieve sieve(sieve_limit);
    Context ctx;
    ctx.constants = singular::Constants::from_twin_prime_constant(
        singular::twin_prime_constant_corrected(sieve_limit, sieve));
    ctx.sieve_limit = sieve_limit;
    ctx.hmax = hmax;
    return ctx;
}

std::vector<Check> run(Suite suite, const Context& ctx) {
    Resources res(ctx);
    Checks out;
    auto want = [&](Suite s) { return suite == Suite::all || suite == s; };
    if (want(Suite::arithmetic)) arithmetic_suite(res, out);
    if (want(Suite::singular)) singular_suite(res, out);
    if (want(Suite::smoothing)) smoothing_suite(out);
    if (want(Suite::oscillatory)) oscillatory_suite(out);
    if (want(Suite::paircorr)) paircorr_suite(res, out);
    if (want(Suite::formulas)) formulas_suite(res, out);
    return out;
}

std::string format(const Check& c) {
    return fmt::format("{},{},{},{}", c.pass ? "PASS" : "FAIL", c.name, csv::num(c.observed), csv::num(c.bound));
}

}  // namespace paircorr::verify
