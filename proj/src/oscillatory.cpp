#include "paircorr/oscillatory.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "paircorr/singular_series.hpp"
#include "paircorr/summation.hpp"

namespace paircorr::osc {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Series for x <= 4.
void si_ci_series(double x, double& si, double& ci_minus_log) {
    const double x2 = x * x;
    double term = x;  // x^{2k+1}/(2k+1)!
    double s = x;
    for (int k = 1; k < 60; ++k) {
        term *= -x2 / (double(2 * k) * double(2 * k + 1));
        const double add = term / double(2 * k + 1);
        s += add;
        if (std::abs(add) < 1e-18 * std::abs(s)) break;
    }
    si = s;
    double t = 1.0;  // x^{2k}/(2k)!
    double c = 0.0;
    for (int k = 1; k < 60; ++k) {
        t *= -x2 / (double(2 * k - 1) * double(2 * k));
        const double add = t / double(2 * k);
        c += add;
        if (std::abs(add) < 1e-18 * std::max(std::abs(c), 1e-300)) break;
    }
    ci_minus_log = singular::kEulerGamma + c;
}

// Continued fraction for E1(ix) (modified Lentz), x > 4.
void si_ci_continued_fraction(double x, double& si, double& ci) {
    using C = std::complex<double>;
    const double tiny = 1e-300;
    C b(1.0, x);
    C c(1.0 / tiny, 0.0);
    C d = 1.0 / b;
    C h = d;
    for (int i = 2; i < 1000; ++i) {
        const double a = -double(i - 1) * double(i - 1);
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const C del = c * d;
        h *= del;
        if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < 4 * kEps) break;
    }
    h *= C(std::cos(x), -std::sin(x));
    ci = -h.real();
    si = kPi / 2 + h.imag();
}

// QUADPACK 21-point Kronrod nodes (positive half, descending) and weights.
constexpr double kXgk[11] = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr double kWgk[11] = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr double kWg[5] = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
    double a, b, value, error;
};

Segment gk21(const std::function<double(double)>& fn, double a, double b) {
    const double centr = 0.5 * (a + b);
    const double hlgth = 0.5 * (b - a);
    const double dhlgth = std::abs(hlgth);
    double fv1[10], fv2[10];
    const double fc = fn(centr);
    double resg = 0.0;
    double resk = kWgk[10] * fc;
    double resabs = std::abs(resk);
    for (int j = 0; j < 10; ++j) {
        const double dx = hlgth * kXgk[j];
        fv1[j] = fn(centr - dx);
        fv2[j] = fn(centr + dx);
        const double sum = fv1[j] + fv2[j];
        resk += kWgk[j] * sum;
        resabs += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
        if (j % 2 == 1) resg += kWg[j / 2] * sum;
    }
    const double reskh = 0.5 * resk;
    double resasc = kWgk[10] * std::abs(fc - reskh);
    for (int j = 0; j < 10; ++j) resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
    const double result = resk * hlgth;
    resabs *= dhlgth;
    resasc *= dhlgth;
    double abserr = std::abs((resk - resg) * hlgth);
    if (resasc != 0.0 && abserr != 0.0) abserr = resasc * std::min(1.0, std::pow(200.0 * abserr / resasc, 1.5));
    if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) abserr = std::max(50.0 * kEps * resabs, abserr);
    if (!std::isfinite(result)) throw std::runtime_error("adaptive_osc_quad: integrand not finite");
    return {a, b, result, abserr};
}

bool by_error(const Segment& l, const Segment& r) { return l.error < r.error; }

// int_Y^inf e^{i a y} y^{-m} dy by repeated integration by parts; needs a*Y >> m.
std::complex<double> oscillatory_power_tail(double m, double a, double Y) {
    using C = std::complex<double>;
    const C ia(0.0, a);
    C term = -std::exp(C(0.0, a * Y)) * std::pow(Y, -m) / ia;
    C acc = term;
    for (int k = 0; k < 200; ++k) {
        term *= (m + k) / (ia * Y);
        acc += term;
        if (std::abs(term) < 1e-18 * std::abs(acc)) break;
    }
    return acc;
}

}  // namespace

PanelResult gauss_kronrod21(const std::function<double(double)>& fn, double a, double b) {
    const Segment s = gk21(fn, a, b);
    return {s.value, s.error};
}

double sine_integral(double x) {
    if (x < 0) return -sine_integral(-x);
    if (x == 0) return 0.0;
    double si, c;
    if (x <= 4.0) {
        si_ci_series(x, si, c);
    } else {
        si_ci_continued_fraction(x, si, c);
    }
    return si;
}

double cosine_integral(double x) {
    if (!(x > 0)) throw std::domain_error("cosine_integral: x must be positive");
    double si, c;
    if (x <= 4.0) {
        si_ci_series(x, si, c);
        return c + std::log(x);
    }
    si_ci_continued_fraction(x, si, c);
    return c;
}

double sin_over_even_power_tail(int n, double a) {
    if (n < 1) throw std::domain_error("sin_over_even_power_tail: n must be >= 1");
    if (!(a > 0)) throw std::domain_error("sin_over_even_power_tail: a must be positive");
    const int top = 2 * n - 1;
    // prefactor a^{2n-1}/(2n-1)! folded into each term: a^{k-1} (2n-k-1)!/(2n-1)!
    CompensatedSum<double> acc;
    double ratio = 1.0 / double(top);  // (2n-2)!/(2n-1)! for k = 1
    double apow = 1.0;
    for (int k = 1; k <= top; ++k) {
        acc += ratio * apow * std::sin(a + (k - 1) * kPi / 2);
        apow *= a;
        if (k < top) ratio /= double(top - k);
    }
    double fact = 1.0;
    for (int j = 2; j <= top; ++j) fact *= j;
    const double ci_term = std::pow(a, top) / fact * cosine_integral(a);
    acc += (n % 2 == 0) ? ci_term : -ci_term;
    return acc.value();
}

double tail_sin_integral(int m, double a) {
    if (m < 2) throw std::domain_error("tail_sin_integral: m must be >= 2");
    if (!(a > 0)) throw std::domain_error("tail_sin_integral: a must be positive");
    // The closed form cancels like a^{m-1} eps; the asymptotic series is far better there.
    if (a > 40.0 + 2.0 * m) return oscillatory_power_tail(double(m), a, 1.0).imag();
    if (m % 2 == 0) return sin_over_even_power_tail(m / 2, a);
    const double Y = std::max(2.0, (60.0 + 2.0 * m) / a);
    QuadratureSpec spec;
    spec.abs_tol = 1e-14;
    spec.rel_tol = 1e-14;
    const auto body = adaptive_osc_quad(
        [&](double y) { return std::sin(a * y) / std::pow(y, m); }, 1.0, Y, spec, {}, a);
    return body.value + oscillatory_power_tail(double(m), a, Y).imag();
}

QuadResult adaptive_osc_quad(const std::function<double(double)>& fn, double a, double b,
                             const QuadratureSpec& spec, const std::vector<double>& breakpoints,
                             double frequency) {
    if (!(spec.abs_tol > 0) || !(spec.rel_tol > 0)) {
        throw std::invalid_argument("adaptive_osc_quad: tolerances must be positive");
    }
    QuadResult out;
    if (a == b) return out;
    if (b < a) {
        out = adaptive_osc_quad(fn, b, a, spec, breakpoints, frequency);
        out.value = -out.value;
        return out;
    }

    std::vector<double> cuts{a, b};
    for (double p : breakpoints) {
        if (p > a && p < b) cuts.push_back(p);
    }
    if (frequency > 0) {
        const double half = kPi / frequency;
        const double first = std::floor(a / half) + 1.0;
        const double count = std::floor(b / half) - first + 1.0;
        if (count > 5e6) throw std::length_error("adaptive_osc_quad: too many half-periods in range");
        for (double k = first; k * half < b; k += 1.0) cuts.push_back(k * half);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::vector<Segment> heap;
    heap.reserve(cuts.size() + 64);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) heap.push_back(gk21(fn, cuts[i], cuts[i + 1]));

    auto totals = [&](double& value, double& error) {
        CompensatedSum<double> v, e;
        for (const auto& s : heap) {
            v += s.value;
            e += s.error;
        }
        value = v.value();
        error = e.value();
    };
    double value = 0.0, error = 0.0;
    totals(value, error);
    std::make_heap(heap.begin(), heap.end(), by_error);
    int refinements = 0;
    while (error > std::max(spec.abs_tol, spec.rel_tol * std::abs(value)) &&
           refinements < spec.max_subdivisions) {
        std::pop_heap(heap.begin(), heap.end(), by_error);
        const Segment worst = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            heap.push_back(worst);
            std::push_heap(heap.begin(), heap.end(), by_error);
            break;
        }
        const Segment l = gk21(fn, worst.a, mid);
        const Segment r = gk21(fn, mid, worst.b);
        value += l.value + r.value - worst.value;
        error += l.error + r.error - worst.error;
        heap.push_back(l);
        std::push_heap(heap.begin(), heap.end(), by_error);
        heap.push_back(r);
        std::push_heap(heap.begin(), heap.end(), by_error);
        ++refinements;
        if (refinements % 4096 == 0) totals(value, error);
    }
    // Reduce in position order so the result does not depend on heap layout.
    std::sort(heap.begin(), heap.end(), [](const Segment& l, const Segment& r) { return l.a < r.a; });
    totals(value, error);
    out.value = value;
    out.error_estimate = error;
    out.intervals = int(heap.size());
    out.truncation_point = b;
    return out;
}

QuadResult sinc_weighted_integral(const DecayingIntegrand& F, double a, const QuadratureSpec& spec) {
    if (!F.fn) throw std::invalid_argument("sinc_weighted_integral: missing integrand");
    if (!(F.decay_constant > 0) || !(F.decay_exponent > 0) || !std::isfinite(F.decay_constant)) {
        throw std::invalid_argument("sinc_weighted_integral: decay bound metadata required");
    }
    if (!(a > 0)) throw std::domain_error("sinc_weighted_integral: a must be positive");
    const double c = F.decay_constant;
    const double p = F.decay_exponent;
    // |int_Y^inf F sin(ay)/(ay)| <= c Y^{-p} / (a p)
    double Y = spec.truncation_point > 0 ? spec.truncation_point
                                         : std::pow(2.0 * c / (a * p * spec.abs_tol), 1.0 / p);
    if (spec.truncation_point <= 0 && Y <= 1.0) {
        // the whole integral is already below abs_tol/2
        QuadResult r;
        r.truncation_point = 1.0;
        r.truncation_bound = c / (a * p);
        return r;
    }
    if (Y > F.upper_limit) Y = F.upper_limit;
    if (!(Y > 1.0)) throw std::invalid_argument("sinc_weighted_integral: empty integration range");

    std::vector<double> breaks;
    if (F.breakpoint_spacing > 0) {
        const double step = F.breakpoint_spacing;
        const double count = (Y - 1.0) / step;
        if (count > 2e7) throw std::length_error("sinc_weighted_integral: breakpoint grid too large");
        breaks.reserve(std::size_t(count) + 1);
        for (double k = std::ceil(1.0 / step); k * step < Y; k += 1.0) breaks.push_back(k * step);
    }
    auto integrand = [&](double y) {
        const double z = a * y;
        return F.fn(y) * std::sin(z) / z;
    };
    QuadResult r = adaptive_osc_quad(integrand, 1.0, Y, spec, breaks, a);
    // Leading integration-by-parts term of the dropped tail, once it oscillates.
    if (a * Y > 10.0) r.value += F.fn(Y) * std::cos(a * Y) / (a * a * Y);
    r.truncation_point = Y;
    // |sinc| <= 1 up to y* = max(Y, 1/a), then |sinc| <= 1/(a y).
    const double ystar = std::max(Y, 1.0 / a);
    double near = 0.0;
    if (ystar > Y) {
        near = std::abs(p - 1.0) < 1e-12 ? c * std::log(ystar / Y)
                                         : c * (std::pow(ystar, 1.0 - p) - std::pow(Y, 1.0 - p)) / (1.0 - p);
    }
    r.truncation_bound = near + c * std::pow(ystar, -p) / (a * p);
    return r;
}

}  // namespace paircorr::osc
