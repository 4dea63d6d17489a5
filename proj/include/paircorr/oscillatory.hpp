#pragma once

#include <functional>
#include <limits>
#include <vector>

namespace paircorr::osc {

struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-12;
    int max_subdivisions = 200000;  ///< refinements beyond the initial partition
    /// Upper truncation point for semi-infinite ranges; 0 selects it from the
    /// decay bound so the neglected tail is below abs_tol/2.
    double truncation_point = 0.0;
};

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;     ///< quadrature error on the finite part
    double truncation_bound = 0.0;   ///< bound on the neglected semi-infinite tail
    double truncation_point = 0.0;
    int intervals = 0;
};

struct PanelResult {
    double value;
    double error;  ///< QUADPACK-style error estimate
};

/// One 21-point Gauss-Kronrod panel on [a, b].
PanelResult gauss_kronrod21(const std::function<double(double)>& fn, double a, double b);

/// Si(x) = int_0^x sin(t)/t dt, odd in x.
double sine_integral(double x);

/// ci(x) = -int_x^inf cos(t)/t dt. Throws std::domain_error for x <= 0.
double cosine_integral(double x);

/// int_1^inf sin(a x)/x^{2n} dx by the closed form in terms of ci(a). The
/// terms cancel, costing about a^{2n} ulps of absolute accuracy.
double sin_over_even_power_tail(int n, double a);

/// int_1^inf sin(a y)/y^m dy for m >= 2: closed form for even m, quadrature
/// plus an asymptotic tail for odd m, the asymptotic series alone once a > 40 + 2m.
double tail_sin_integral(int m, double a);

/// Adaptive Gauss-Kronrod (21-point) integration on [a, b]. The initial
/// partition splits at every entry of `breakpoints` inside (a, b) and, when
/// `frequency` > 0, at multiples of pi/frequency.
QuadResult adaptive_osc_quad(const std::function<double(double)>& fn, double a, double b,
                             const QuadratureSpec& spec, const std::vector<double>& breakpoints = {},
                             double frequency = 0.0);

/// Integrand on [1, inf) with |F(y)| <= decay_constant * y^{-decay_exponent}.
struct DecayingIntegrand {
    std::function<double(double)> fn;
    double decay_constant = std::numeric_limits<double>::quiet_NaN();
    double decay_exponent = std::numeric_limits<double>::quiet_NaN();
    /// Largest y at which fn may be evaluated.
    double upper_limit = std::numeric_limits<double>::infinity();
    /// If > 0, fn may have kinks at multiples of this spacing.
    double breakpoint_spacing = 0.0;
};

/// int_1^inf F(y) sin(a y)/(a y) dy. Throws std::invalid_argument when the
/// decay metadata is missing or not positive.
QuadResult sinc_weighted_integral(const DecayingIntegrand& F, double a, const QuadratureSpec& spec = {});

}  // namespace paircorr::osc
