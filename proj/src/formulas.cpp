#include "paircorr/formulas.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

#include "paircorr/csv.hpp"
#include "paircorr/oscillatory.hpp"
#include "paircorr/smoothing.hpp"

namespace paircorr::formulas {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
// |f(y)| <= c y^0.6 makes every t5..t7 integrand decay like y^{-1.4}.
constexpr double kIntegrandDecay = 2.0 - singular::SingularTable::kDecayExponent;

}  // namespace

double FormulaParams::tau() const { return std::pow(T, 1.0 - epsilon); }
double FormulaParams::U() const { return std::pow(std::log(T), M); }
double FormulaParams::delta() const { return 1.0 / (std::ldexp(1.0, K) * U()); }
double FormulaParams::H_star() const {
    const double log_h = -2.0 * (1.0 - epsilon) * std::log(T) + 2.0 * std::log(x) / (1.0 - epsilon);
    return std::exp(log_h);
}

void FormulaParams::check_range() const {
    if (M <= 2) throw std::invalid_argument(fmt::format("M = {} must exceed 2", M));
    if (!(epsilon > 0 && epsilon <= 0.05)) {
        throw std::invalid_argument(fmt::format("eps = {} outside (0, 0.05]", epsilon));
    }
    if (K < smooth::SmoothWeight::kMinK || K > smooth::SmoothWeight::kMaxK) {
        throw std::invalid_argument(fmt::format("K = {} outside [{}, {}]", K, smooth::SmoothWeight::kMinK,
                                                smooth::SmoothWeight::kMaxK));
    }
    if (!(T > std::numbers::e)) throw std::out_of_range(fmt::format("T = {} must exceed e", T));
    const double lower = T / U();
    const double upper = std::pow(T, 2.0 - epsilon);
    if (!(x >= lower)) {
        throw std::out_of_range(fmt::format("x = {} below T/(log T)^M = {}", x, lower));
    }
    if (!(x <= upper)) {
        throw std::out_of_range(fmt::format("x = {} above T^(2-eps) = {}", x, upper));
    }
}

FormulaBreakdown theorem1(const FormulaParams& p, const singular::SingularTable& table) {
    p.check_range();
    FormulaBreakdown out;
    const double T = p.T, x = p.x, eps = p.epsilon;
    const double a = T / x;
    const double B = table.constants().B;
    const double hmax = double(table.hmax());

    out.leading = T / (2 * kPi) * std::log(x);
    out.t1 = 4 * x / (3 * kPi) * osc::sine_integral(a);

    out.H_star = p.H_star();
    if (out.H_star < 1.0) {
        out.warnings.push_back(fmt::format("H* = {} < 1: singular-series sum is empty", out.H_star));
        out.singular_sum = 0.0;
    } else if (out.H_star <= hmax) {
        out.singular_sum = table.reciprocal_square_sum(out.H_star);
    } else {
        // Sum to hmax plus the analytic tail of Sum_{hmax<h<=H*} S(h)/h^2 ~ 1/hmax - 1/H*.
        out.singular_sum = table.reciprocal_square_sum(hmax) + (1.0 / hmax - 1.0 / out.H_star);
    }
    const double half_sin = std::sin(0.5 * a);
    out.t2 = x * x / (kPi * T) * out.singular_sum * 2.0 * half_sin * half_sin;

    out.t3 = x / (2 * kPi) * osc::tail_sin_integral(2, a);
    out.t4 = (B / 2 + 11.0 / 12.0) * x / kPi * osc::tail_sin_integral(4, a);

    const double c = table.decay_constant();
    osc::QuadratureSpec spec;
    spec.abs_tol = 1e-7;
    spec.rel_tol = 1e-10;
    auto run = [&](std::function<double(double)> fn, double constant, double prefactor) {
        osc::DecayingIntegrand F;
        F.fn = std::move(fn);
        F.decay_constant = constant;
        F.decay_exponent = kIntegrandDecay;
        F.upper_limit = hmax;
        F.breakpoint_spacing = 2.0;  // f has kinks at even integers only
        const auto r = osc::sinc_weighted_integral(F, a, spec);
        out.numerical_error += std::abs(prefactor) * (r.error_estimate + r.truncation_bound);
        return prefactor * r.value;
    };
    out.t5 = run([&](double y) { return table.fluctuation_integral(y) / (y * y); }, c, 4 * T / kPi);
    out.t6 = run([&](double y) { return table.fluctuation_double_integral(y) / (y * y * y); }, c / 1.6,
                 2 * T / kPi);
    const double tail_bound = c * std::pow(hmax, -2.4) / 2.4;
    out.t7 = run([&](double y) { return y * table.fluctuation_tail_moment(y).value; }, c / 2.4, 6 * T / kPi);
    // int_hmax^inf f/u^4 is not in the t7 integrand; |y * remainder| <= y * tail_bound
    // contributes at most tail_bound * int_1^hmax |sin(ay)|/a dy <= tail_bound * hmax / a.
    out.numerical_error += 6 * T / kPi * tail_bound * hmax / a;

    out.total = out.recombine();
    out.error_budget = std::pow(x, 1 + 6 * eps) / T + std::pow(x, 0.5 + 7 * eps) +
                       T / std::pow(std::log(T), p.M - 2);
    return out;
}

double corollary2_rhs(double T) {
    const double t = T / (2 * kPi);
    return t * std::log(t) - t;
}

double montgomery_rhs(double x, double T) {
    const double t = T / (2 * kPi);
    const double l = std::log(t);
    return t * std::log(x) + (t * l * l - 2 * t * l) / (x * x);
}

PiecewiseValue conjecture_piecewise(double x, double T, double epsilon) {
    if (!(x >= 1)) throw std::domain_error("conjecture_piecewise: x must be >= 1");
    if (!(T > 1)) throw std::domain_error("conjecture_piecewise: T must exceed 1");
    if (x <= T) return {montgomery_rhs(x, T), 1};
    if (x <= std::pow(T, 1 + epsilon)) return {corollary2_rhs(T), 2};
    return {corollary2_rhs(T), 3};
}

double gue_integral(double alpha) {
    if (alpha < 0) throw std::domain_error("gue_integral: alpha must be nonnegative");
    if (alpha == 0) return 0.0;
    osc::QuadratureSpec spec;
    spec.abs_tol = 1e-13;
    spec.rel_tol = 1e-13;
    const auto r = osc::adaptive_osc_quad(
        [](double u) {
            const double s = smooth::sinc(kPi * u);
            return 1.0 - s * s;
        },
        0.0, alpha, spec, {}, kPi);
    return r.value;
}

std::vector<double> log_grid(double x_min, double x_max, int points) {
    if (points < 0) throw std::invalid_argument("log_grid: negative point count");
    if (points > 0 && !(x_min > 0 && x_max >= x_min)) {
        throw std::invalid_argument("log_grid: need 0 < x_min <= x_max");
    }
    std::vector<double> xs;
    xs.reserve(std::size_t(points));
    const double l0 = std::log(x_min), l1 = std::log(x_max);
    for (int i = 0; i < points; ++i) {
        xs.push_back(points == 1 ? x_min : std::exp(l0 + (l1 - l0) * double(i) / double(points - 1)));
    }
    if (points > 1) {
        xs.front() = x_min;
        xs.back() = x_max;
    }
    return xs;
}

std::vector<ComparisonRow> compare(const zeros::ZeroDataset& zs, double T, const std::vector<double>& xs,
                                   const singular::SingularTable& table, const CompareOptions& opts) {
    std::vector<ComparisonRow> rows;
    rows.reserve(xs.size());
    for (double x : xs) {
        ComparisonRow row;
        row.x = x;
        row.T = T;
        try {
            row.F_emp = opts.method == pc::Method::direct ? pc::f_direct(zs, x, T, opts.direct).value
                                                          : pc::f_integral(zs, x, T, opts.integral).value;
        } catch (const std::exception& e) {
            row.F_emp = kNaN;
            row.errors.push_back(fmt::format("F_emp: {}", e.what()));
        }
        try {
            FormulaParams params{T, x, opts.M, opts.epsilon, opts.K};
            const auto b = theorem1(params, table);
            row.F_thm1 = b.total;
            row.error_budget = b.error_budget;
        } catch (const std::exception& e) {
            row.F_thm1 = kNaN;
            row.error_budget = kNaN;
            row.errors.push_back(fmt::format("F_thm1: {}", e.what()));
        }
        row.F_eq01 = montgomery_rhs(x, T);
        row.F_cor2 = corollary2_rhs(T);
        row.resid_thm1 = row.F_emp - row.F_thm1;
        row.resid_eq01 = row.F_emp - row.F_eq01;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string comparison_csv(const std::vector<ComparisonRow>& rows) {
    std::string out = "x,T,F_emp,F_thm1,F_eq01,F_cor2,resid_thm1,resid_eq01,error_budget\n";
    for (const auto& r : rows) {
        out += fmt::format("{},{},{},{},{},{},{},{},{}\n", csv::num(r.x), csv::num(r.T), csv::num(r.F_emp),
                           csv::num(r.F_thm1), csv::num(r.F_eq01), csv::num(r.F_cor2),
                           csv::num(r.resid_thm1), csv::num(r.resid_eq01), csv::num(r.error_budget));
    }
    return out;
}

}  // namespace paircorr::formulas
