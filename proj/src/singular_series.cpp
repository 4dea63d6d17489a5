#include "paircorr/singular_series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "paircorr/gauss.hpp"
#include "paircorr/summation.hpp"

namespace paircorr::singular {

namespace {

constexpr double kLog2Pi = 1.8378770664093454836;  // log(2 pi)
// Per-piece integrands are analytic on [h, h+1] with the nearest singularity
// at u = 0, so Gauss-Legendre converges like (4h)^{-2n}.
std::size_t piece_rule(double h) { return h < 10 ? 20 : h < 100 ? 8 : h < 1000 ? 4 : 3; }

double int_power(double u, int k) {
    double base = k < 0 ? 1.0 / u : u;
    double r = 1.0;
    for (int e = k < 0 ? -k : k; e > 0; e >>= 1) {
        if (e & 1) r *= base;
        base *= base;
    }
    return r;
}

// (1+r) log1p(r) - r = int_0^r log1p(v) dv
double log_antiderivative_excess(double r) {
    if (r <= 0.1) {
        double term = r;
        double acc = 0.0;
        for (int k = 2; k < 40; ++k) {
            term *= -r;
            const double add = -term / (double(k) * double(k - 1));
            acc += add;
            if (std::abs(add) < 1e-18 * std::abs(acc)) break;
        }
        return acc;
    }
    return (1.0 + r) * std::log1p(r) - r;
}

// int_0^r (r - v) log1p(v) dv
double log_second_antiderivative(double r) {
    if (r <= 0.1) {
        double power = r * r;
        double acc = 0.0;
        for (int k = 1; k < 40; ++k) {
            power *= r;
            const double add = ((k % 2) ? 1.0 : -1.0) * power / (double(k) * (k + 1) * (k + 2));
            acc += add;
            if (std::abs(add) < 1e-18 * std::abs(acc)) break;
        }
        return acc;
    }
    const double q = 1.0 + r;
    return 0.5 * q * q * std::log1p(r) - 0.75 * q * q + q - 0.25;
}

// int_h^{h+s} log u du
double log_integral(double h, double s) { return s * std::log(h) + h * log_antiderivative_excess(s / h); }

// int_0^s int_h^{h+sigma} log u du dsigma
double log_double_integral(double h, double s) {
    return 0.5 * s * s * std::log(h) + h * h * log_second_antiderivative(s / h);
}

}  // namespace

Constants Constants::from_twin_prime_constant(double c2) {
    Constants c{};
    c.euler_gamma = kEulerGamma;
    c.twin_prime_constant = c2;
    c.A = 0.5 * (1.0 - kEulerGamma - kLog2Pi);
    c.B = -kEulerGamma - kLog2Pi;
    return c;
}

double twin_prime_constant(std::uint32_t prime_limit, const arith::PrimeSieve& sieve) {
    if (prime_limit < 3) throw std::invalid_argument("twin_prime_constant: prime_limit < 3");
    if (prime_limit > sieve.limit()) throw std::out_of_range("twin_prime_constant: beyond sieve limit");
    CompensatedSum<double> log_product;
    for (std::uint32_t p : sieve.primes()) {
        if (p > prime_limit) break;
        if (p == 2) continue;
        const double pm1 = double(p) - 1.0;
        log_product += std::log1p(-1.0 / (pm1 * pm1));
    }
    return std::exp(log_product.value());
}

namespace {

// E1(x) for x >= 1 by its continued fraction (modified Lentz).
double exponential_integral_e1(double x) {
    const double tiny = 1e-300;
    double b = x + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 1000; ++i) {
        const double an = -double(i) * double(i);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        const double del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x);
}

}  // namespace

double twin_prime_constant_corrected(std::uint32_t prime_limit, const arith::PrimeSieve& sieve) {
    const double partial = twin_prime_constant(prime_limit, sieve);
    const double log_l = std::log(double(prime_limit));
    if (log_l < 1.0) return partial;
    return partial * std::exp(-exponential_integral_e1(log_l));
}

double singular_series(std::uint64_t h, const Constants& constants, const arith::PrimeSieve& sieve) {
    if (h == 0) throw std::domain_error("singular_series: h must be positive");
    if (h > sieve.limit()) throw std::out_of_range("singular_series: h exceeds sieve limit");
    if (h % 2 == 1) return 0.0;
    double value = 2.0 * constants.twin_prime_constant;
    for (std::uint32_t p : sieve.distinct_prime_factors(std::uint32_t(h))) {
        if (p > 2) value *= (double(p) - 1.0) / (double(p) - 2.0);
    }
    return value;
}

SingularTable::SingularTable(std::uint32_t hmax, const Constants& constants,
                             const arith::PrimeSieve& sieve)
    : hmax_(hmax), constants_(constants) {
    if (hmax < 2) throw std::invalid_argument("SingularTable: hmax must be at least 2");
    if (hmax > kMaxHmax) {
        throw std::length_error("SingularTable: hmax " + std::to_string(hmax) +
                                " exceeds memory guard " + std::to_string(kMaxHmax));
    }
    if (hmax > sieve.limit()) throw std::out_of_range("SingularTable: hmax exceeds sieve limit");

    const std::size_t n = std::size_t(hmax) + 1;
    values_.assign(n, 0.0);
    excess0_.assign(n, 0.0);
    prefix1_.assign(n, 0.0);
    prefix2_.assign(n, 0.0);
    f_.assign(n, 0.0);
    f2_.assign(n, 0.0);
    tail4_.assign(n, 0.0);
    recip2_suffix_.assign(n, 0.0);

    CompensatedSum<double> e0, p1, p2;
    for (std::uint32_t h = 1; h <= hmax; ++h) {
        const double s = singular_series(h, constants, sieve);
        const double hd = double(h);
        values_[h] = s;
        e0 += s - 1.0;
        p1 += s * hd;
        p2 += s * hd * hd;
        excess0_[h] = e0.value();
        prefix1_[h] = p1.value();
        prefix2_[h] = p2.value();
    }

    const double half_b = 0.5 * constants_.B;
    CompensatedSum<double> fsum, f2sum;
    for (std::uint32_t h = 1; h < hmax; ++h) {
        const double hd = double(h);
        const double slope = excess0_[h] - half_b;
        f2sum += f_[h] + 0.5 * slope - 1.0 / 6.0 + 0.5 * log_double_integral(hd, 1.0);
        fsum += slope - 0.5 + 0.5 * log_integral(hd, 1.0);
        f_[h + 1] = fsum.value();
        f2_[h + 1] = f2sum.value();
    }

    CompensatedSum<double> t4, r2;
    for (std::uint32_t h = hmax; h-- > 1;) {
        t4 += f_moment(-4, double(h), double(h) + 1.0);
        tail4_[h] = t4.value();
    }
    for (std::uint32_t h = hmax; h-- > 0;) {
        const double next = double(h) + 1.0;
        r2 += values_[h + 1] / (next * next);
        recip2_suffix_[h] = r2.value();
    }

    double worst = 0.0;
    for (std::uint32_t h = 2; h <= hmax; ++h) {
        worst = std::max(worst, std::abs(f_[h]) / std::pow(double(h), kDecayExponent));
    }
    decay_constant_ = 2.0 * worst;
}

void SingularTable::check_y(double y, const char* what) const {
    if (!(y >= 1.0) || y > double(hmax_)) {
        throw std::out_of_range(std::string(what) + ": y = " + std::to_string(y) +
                                " outside [1, " + std::to_string(hmax_) + "]");
    }
}

SingularTable::Piece SingularTable::locate(double y) const {
    const double fl = std::floor(y);
    return {std::uint32_t(fl), y - fl};
}

double SingularTable::value(std::uint32_t h) const {
    if (h == 0 || h > hmax_) throw std::out_of_range("SingularTable::value: h out of range");
    return values_[h];
}

double SingularTable::prefix0(std::uint32_t n) const {
    if (n > hmax_) throw std::out_of_range("prefix0: beyond table");
    return excess0_[n] + double(n);
}
double SingularTable::prefix0_excess(std::uint32_t n) const {
    if (n > hmax_) throw std::out_of_range("prefix0_excess: beyond table");
    return excess0_[n];
}
double SingularTable::prefix1(std::uint32_t n) const {
    if (n > hmax_) throw std::out_of_range("prefix1: beyond table");
    return prefix1_[n];
}
double SingularTable::prefix2(std::uint32_t n) const {
    if (n > hmax_) throw std::out_of_range("prefix2: beyond table");
    return prefix2_[n];
}
double SingularTable::f_at_integer(std::uint32_t n) const {
    if (n == 0 || n > hmax_) throw std::out_of_range("f_at_integer: out of range");
    return f_[n];
}
double SingularTable::f_integral_at_integer(std::uint32_t n) const {
    if (n == 0 || n > hmax_) throw std::out_of_range("f_integral_at_integer: out of range");
    return f2_[n];
}

double SingularTable::partial_sum_fluctuation(double y) const {
    check_y(y, "partial_sum_fluctuation");
    const auto [h, s] = locate(y);
    return excess0_[h] - s + 0.5 * std::log(y);
}

double SingularTable::fluctuation_integral(double y) const {
    check_y(y, "fluctuation_integral");
    const auto [h, s] = locate(y);
    if (s == 0.0) return f_[h];
    const double slope = excess0_[h] - 0.5 * constants_.B;
    return f_[h] + slope * s - 0.5 * s * s + 0.5 * log_integral(double(h), s);
}

double SingularTable::fluctuation_double_integral(double y) const {
    check_y(y, "fluctuation_double_integral");
    const auto [h, s] = locate(y);
    if (s == 0.0) return f2_[h];
    const double slope = excess0_[h] - 0.5 * constants_.B;
    return f2_[h] + f_[h] * s + 0.5 * slope * s * s - s * s * s / 6.0 +
           0.5 * log_double_integral(double(h), s);
}

double SingularTable::epsilon_moment(int k, double y0, double y1) const {
    check_y(y0, "epsilon_moment");
    check_y(y1, "epsilon_moment");
    if (k < -5 || k > 3) throw std::domain_error("epsilon_moment: power outside [-5, 3]");
    if (y1 < y0) return -epsilon_moment(k, y1, y0);
    CompensatedSum<double> acc;
    double a = y0;
    while (a < y1) {
        const double h = std::floor(a);
        const double b = std::min(y1, h + 1.0);
        const double excess = excess0_[std::uint32_t(h)];
        acc += quad::gauss_legendre_integrate(
            [&](double u) { return (excess - (u - h) + 0.5 * std::log(u)) * int_power(u, k); }, a, b,
            piece_rule(h));
        a = b;
    }
    return acc.value();
}

double SingularTable::f_moment(int k, double y0, double y1) const {
    check_y(y0, "f_moment");
    check_y(y1, "f_moment");
    if (k < -5 || k > 3) throw std::domain_error("f_moment: power outside [-5, 3]");
    if (y1 < y0) return -f_moment(k, y1, y0);
    const double half_b = 0.5 * constants_.B;
    CompensatedSum<double> acc;
    double a = y0;
    while (a < y1) {
        const double h = std::floor(a);
        const double b = std::min(y1, h + 1.0);
        const std::uint32_t hi = std::uint32_t(h);
        const double slope = excess0_[hi] - half_b;
        const double f_h = f_[hi];
        const double log_h = std::log(h);
        acc += quad::gauss_legendre_integrate(
            [&](double u) {
                const double s = u - h;
                const double J = s * log_h + h * log_antiderivative_excess(s / h);
                const double fv = f_h + slope * s - 0.5 * s * s + 0.5 * J;
                return fv * int_power(u, k);
            },
            a, b, piece_rule(h));
        a = b;
    }
    return acc.value();
}

TailValue SingularTable::fluctuation_tail_moment(double y, double ymax) const {
    check_y(y, "fluctuation_tail_moment");
    check_y(ymax, "fluctuation_tail_moment");
    const double c = decay_constant_;
    const double bound = c * std::pow(ymax, -(3.0 - kDecayExponent)) / (3.0 - kDecayExponent);
    if (ymax <= y) return {ymax == y ? 0.0 : -f_moment(-4, ymax, y), bound};
    const double top = std::floor(ymax);
    const double first = std::ceil(y);
    if (first >= top) return {f_moment(-4, y, ymax), bound};
    // [y, ceil y] + [ceil y, floor ymax] from the suffix table + [floor ymax, ymax]
    double value = tail4_[std::uint32_t(first)] - tail4_[std::uint32_t(top)];
    if (first > y) value += f_moment(-4, y, first);
    if (ymax > top) value += f_moment(-4, top, ymax);
    return {value, bound};
}

double SingularTable::weighted_sum_excess(double y, int alpha) const {
    check_y(y, "weighted_sum_excess");
    if (alpha < 0) throw std::domain_error("weighted_sum_excess: alpha must be >= 0");
    const auto [h, s] = locate(y);
    switch (alpha) {
        case 0: return excess0_[h] - s;
        case 1: return prefix1_[h] - 0.5 * y * y;
        case 2: return prefix2_[h] - y * y * y / 3.0;
        default: break;
    }
    CompensatedSum<double> acc;
    for (std::uint32_t k = 2; k <= h; k += 2) acc += values_[k] * std::pow(double(k), alpha);
    acc -= std::pow(y, alpha + 1) / double(alpha + 1);
    return acc.value();
}

TailValue SingularTable::reciprocal_tail_sum(double y, int alpha) const {
    if (alpha <= 1) throw std::domain_error("reciprocal_tail_sum: alpha must exceed 1 (divergent sum)");
    if (!(y >= 1.0)) throw std::out_of_range("reciprocal_tail_sum: y must be >= 1");
    const double H = double(hmax_);
    const double a1 = double(alpha - 1);
    const double bound = (2.0 + std::log(H)) / std::pow(H, alpha);
    if (y >= H) return {1.0 / (a1 * std::pow(y, a1)), (2.0 + std::log(y)) / std::pow(y, alpha)};
    const double tail = 1.0 / (a1 * std::pow(H, a1));
    const std::uint32_t n = std::uint32_t(std::floor(y));
    if (alpha == 2) return {recip2_suffix_[n] + tail, bound};
    CompensatedSum<double> acc;
    for (std::uint32_t h = hmax_; h > n; --h) {
        if (values_[h] != 0.0) acc += values_[h] / std::pow(double(h), alpha);
    }
    acc += tail;
    return {acc.value(), bound};
}

double SingularTable::reciprocal_square_sum(double H) const {
    if (H < 1.0) return 0.0;
    if (H > double(hmax_)) throw std::out_of_range("reciprocal_square_sum: H beyond table");
    return recip2_suffix_[0] - recip2_suffix_[std::uint32_t(std::floor(H))];
}

PartialSumCheck SingularTable::weighted_partial_sum_check(std::uint32_t h) const {
    if (h == 0 || h > hmax_) throw std::out_of_range("weighted_partial_sum_check: h out of range");
    // Sum_{k<=h} (h-k) S(k) = Sum_{m<h} P(m) = Sum_{m<h} (P(m) - m) + h(h-1)/2
    CompensatedSum<double> excess;
    for (std::uint32_t m = 1; m < h; ++m) excess += excess0_[m];
    const double hd = double(h);
    const double log_term = hd > 1.0 ? 0.5 * hd * std::log(hd) : 0.0;
    const double lhs = excess.value() + 0.5 * hd * (hd - 1.0);
    const double rhs = 0.5 * hd * hd - log_term + constants_.A * hd;
    const double residual = excess.value() - 0.5 * hd + log_term - constants_.A * hd;
    return {lhs, rhs, residual};
}

}  // namespace paircorr::singular
