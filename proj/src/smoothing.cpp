#include "paircorr/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace paircorr::smooth {

namespace {

constexpr double kPi = std::numbers::pi;

// CDF of the sum of n independent U(0,1) variables, 0 < v < n/2 side.
long double irwin_hall_cdf_lower(int n, long double v) {
    long double acc = 0.0L;
    long double binom = 1.0L;
    for (int k = 0; k <= n && k < v; ++k) {
        const long double term = binom * std::pow(v - k, (long double)n);
        acc += (k % 2 == 0) ? term : -term;
        binom = binom * (n - k) / (k + 1);
    }
    long double fact = 1.0L;
    for (int j = 2; j <= n; ++j) fact *= j;
    return acc / fact;
}

long double irwin_hall_cdf(int n, long double v) {
    if (v <= 0) return 0.0L;
    if (v >= n) return 1.0L;
    if (2 * v > n) return 1.0L - irwin_hall_cdf_lower(n, n - v);
    return irwin_hall_cdf_lower(n, v);
}

}  // namespace

double sinc(double z) {
    if (std::abs(z) < 1e-4) {
        const double z2 = z * z;
        return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
    }
    return std::sin(z) / z;
}

SmoothWeight::SmoothWeight(int M, double U, int K, double T_ref)
    : M_(M), U_(U), K_(K), delta_(1.0 / (std::ldexp(1.0, K) * U)), T_ref_(T_ref) {
    if (K < kMinK || K > kMaxK) {
        throw std::invalid_argument("SmoothWeight: K = " + std::to_string(K) + " outside [" +
                                    std::to_string(kMinK) + ", " + std::to_string(kMaxK) + "]");
    }
    if (!(U > 0) || !std::isfinite(U)) throw std::invalid_argument("SmoothWeight: U must be positive");
}

SmoothWeight SmoothWeight::from_height(double T, int M, int K) {
    if (M <= 2) throw std::invalid_argument("SmoothWeight: M must exceed 2");
    if (!(T > std::numbers::e)) throw std::invalid_argument("SmoothWeight: T must exceed e");
    return SmoothWeight(M, std::pow(std::log(T), M), K, T);
}

SmoothWeight SmoothWeight::from_scale(double U, int K) { return SmoothWeight(0, U, K, 0.0); }

double SmoothWeight::chi(int i, double t) const {
    if (i < 0 || i > K_ + 1) throw std::out_of_range("chi: order outside [0, K+1]");
    if (i == 0) return (t >= 0.0 && t <= 1.0) ? 1.0 : 0.0;
    // exact outside the transition bands; the CDF leaves ~1e-58 residue at the knots
    const double half = i * delta_;
    if (t <= -half || t >= 1.0 + half) return 0.0;
    if (t >= half && t <= 1.0 - half) return 1.0;
    // chi_i(t) = P(-t <= S <= 1-t), S a sum of i U(-Delta, Delta).
    const long double width = 2.0L * delta_;
    const long double shift = (long double)i * delta_;
    const long double hi = irwin_hall_cdf(i, ((long double)(1.0 - t) + shift) / width);
    const long double lo = irwin_hall_cdf(i, ((long double)(-t) + shift) / width);
    return std::clamp(double(hi - lo), 0.0, 1.0);
}

std::complex<double> SmoothWeight::psi_hat(double y) const {
    const double mag = sinc(kPi * y) * std::pow(sinc(2 * kPi * delta_ * y), K_ + 1);
    return std::polar(1.0, kPi * y) * mag;
}

double SmoothWeight::re_psi_hat(double y) const {
    return sinc(2 * kPi * y) * std::pow(sinc(2 * kPi * delta_ * y), K_ + 1);
}

std::vector<DerivativeCheck> verify_derivative_bounds(const SmoothWeight& w) {
    const double delta = w.delta();
    const double h = delta / 64.0;
    std::vector<DerivativeCheck> out;
    for (int i = 2; i <= w.K() + 1; ++i) {
        const double reach = (i + 1) * delta;
        for (int j = 0; j <= i - 1; ++j) {
            std::vector<double> binom(j + 1, 1.0);
            for (int k = 1; k <= j; ++k) binom[k] = binom[k - 1] * (j - k + 1) / k;
            double worst = 0.0;
            for (double edge : {0.0, 1.0}) {
                const int steps = int(std::ceil(2 * reach / h));
                for (int s = 0; s <= steps; ++s) {
                    const double t = edge - reach + s * h;
                    double acc = 0.0;
                    for (int k = 0; k <= j; ++k) {
                        const double v = w.chi(i, t + (0.5 * j - k) * h);
                        acc += (k % 2 == 0 ? 1.0 : -1.0) * binom[k] * v;
                    }
                    worst = std::max(worst, std::abs(acc) / std::pow(h, j));
                }
            }
            out.push_back({i, j, worst, std::pow(delta, -j)});
        }
    }
    return out;
}

namespace {

void check_standing_assumption(double T, double x, const SmoothWeight& w) {
    if (!(T > 0) || !(x > 0)) throw std::domain_error("smoothing check: T and x must be positive");
    if (T * w.delta() > x) throw std::domain_error("smoothing check: requires T*Delta <= x");
}

}  // namespace

LemmaComparison verify_lemma_2_5(int n, double T, double x, const SmoothWeight& w) {
    if (n < 1) throw std::domain_error("verify_lemma_2_5: n must be >= 1");
    check_standing_assumption(T, x, w);
    const double a = T / x;
    const double delta = w.delta();
    const int power = w.K() + 1;
    // Beyond v = a*Y the integrand is below v^{-n-1} (Delta v)^{-(K+1)}.
    const double vmax = std::max(50.0 / delta, 2.0 * a);
    const double Y = vmax / a;
    osc::QuadratureSpec spec;
    spec.abs_tol = 1e-13;
    spec.rel_tol = 1e-13;
    spec.max_subdivisions = 400000;
    const auto body = osc::adaptive_osc_quad(
        [&](double y) {
            return std::pow(y, -n) * sinc(a * y) * std::pow(sinc(a * delta * y), power);
        },
        1.0, Y, spec, {}, a);
    const double lhs = body.value;
    const double rhs = osc::tail_sin_integral(n + 1, a) / a;
    const double scale = w.K() * delta * std::log(1.0 / delta);
    return {lhs, rhs, lhs - rhs, scale};
}

LemmaComparison verify_lemma_2_6(const osc::DecayingIntegrand& F, double T, double x,
                                 const SmoothWeight& w) {
    check_standing_assumption(T, x, w);
    const double a = T / x;
    const double delta = w.delta();
    const int power = w.K() + 1;
    osc::QuadratureSpec spec;
    spec.abs_tol = 1e-10;
    spec.rel_tol = 1e-12;
    osc::DecayingIntegrand smoothed = F;
    smoothed.fn = [&](double y) { return F.fn(y) * std::pow(sinc(a * delta * y), power); };
    const double lhs = osc::sinc_weighted_integral(smoothed, a, spec).value;
    const double rhs = osc::sinc_weighted_integral(F, a, spec).value;
    return {lhs, rhs, lhs - rhs, w.K() * delta};
}

}  // namespace paircorr::smooth
