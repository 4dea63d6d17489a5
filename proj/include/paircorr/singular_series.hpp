#pragma once

#include <cstdint>
#include <vector>

#include "paircorr/arithmetic.hpp"

namespace paircorr::singular {

inline constexpr double kEulerGamma = 0.57721566490153286061;

/// Constants of the singular-series asymptotics.
///   A = (1 - C0 - log 2pi)/2,  B = -C0 - log 2pi,  so B = 2A - 1.
struct Constants {
    double euler_gamma;
    double twin_prime_constant;  ///< C2 = prod_{p>2} (1 - 1/(p-1)^2)
    double A;
    double B;

    static Constants from_twin_prime_constant(double c2);
};

/// Partial Euler product prod_{2 < p <= prime_limit} (1 - 1/(p-1)^2).
/// The neglected factor differs from 1 by less than 2/prime_limit.
double twin_prime_constant(std::uint32_t prime_limit, const arith::PrimeSieve& sieve);

/// The partial product times exp(-E1(log prime_limit)), the prime-number-theorem
/// estimate of the neglected factors (Sum_{p > L} 1/p^2 ~ int_L^inf dt/(t^2 log t)).
/// At prime_limit = 10^7 this is within ~1e-12 of C2 instead of ~6e-9; S(h) errors
/// proportional to C2 accumulate into f(y) like y^2/2, so tables use this value.
double twin_prime_constant_corrected(std::uint32_t prime_limit, const arith::PrimeSieve& sieve);

/// Hardy-Littlewood singular series: 0 for odd h, otherwise
/// 2 C2 prod_{p | h, p > 2} (p-1)/(p-2). Throws std::domain_error for h == 0.
double singular_series(std::uint64_t h, const Constants& constants, const arith::PrimeSieve& sieve);

struct TailValue {
    double value;
    double remainder_bound;  ///< bound on the part not represented by `value`
};

struct PartialSumCheck {
    double lhs;       ///< Sum_{k<=h} (h-k) S(k)
    double rhs;       ///< h^2/2 - h log(h)/2 + A h
    double residual;  ///< lhs - rhs, evaluated without cancellation
};

/// Precomputed S(1..hmax) with prefix data for exact piecewise evaluation of
/// the partial-sum fluctuation and its integrals.
///
/// Notation used below: P(y) = Sum_{h<=y} S(h),
///   eps(y) = P(y) - y + log(y)/2                  (partial_sum_fluctuation)
///   f(y)   = int_1^y (eps(u) - B/2) du            (fluctuation_integral)
///   F2(y)  = int_1^y f(u) du                      (fluctuation_double_integral)
/// On each [h, h+1) eps is h-dependent constant minus u plus log(u)/2, so all
/// of the above have closed forms per unit interval. Large-h pieces are
/// evaluated in local coordinates to avoid cancellation.
class SingularTable {
public:
    static constexpr std::uint64_t kMaxHmax = 100'000'000;
    /// Exponent used to operationalize the O(y^{1/2+eps}) bounds on f.
    static constexpr double kDecayExponent = 0.6;

    SingularTable(std::uint32_t hmax, const Constants& constants, const arith::PrimeSieve& sieve);

    std::uint32_t hmax() const { return hmax_; }
    const Constants& constants() const { return constants_; }

    double value(std::uint32_t h) const;
    /// Sum_{h<=n} S(h) h^k for k = 0, 1, 2 (prefix0/1/2).
    double prefix0(std::uint32_t n) const;
    double prefix1(std::uint32_t n) const;
    double prefix2(std::uint32_t n) const;
    /// P(n) - n, the prefix sum with its linear main term removed.
    double prefix0_excess(std::uint32_t n) const;
    double f_at_integer(std::uint32_t n) const;
    double f_integral_at_integer(std::uint32_t n) const;

    double partial_sum_fluctuation(double y) const;
    double fluctuation_integral(double y) const;
    double fluctuation_double_integral(double y) const;

    /// int_y^ymax f(u)/u^4 du. remainder_bound covers int_ymax^inf using
    /// |f(u)| <= decay_constant() u^0.6.
    TailValue fluctuation_tail_moment(double y, double ymax) const;
    TailValue fluctuation_tail_moment(double y) const { return fluctuation_tail_moment(y, hmax_); }

    /// int_y0^y1 eps(u) u^k du and int_y0^y1 f(u) u^k du, k in [-5, 3].
    double epsilon_moment(int k, double y0, double y1) const;
    double f_moment(int k, double y0, double y1) const;

    /// S_alpha(y) = Sum_{h<=y} S(h) h^alpha - y^{alpha+1}/(alpha+1).
    double weighted_sum_excess(double y, int alpha) const;

    /// T_alpha(y) = Sum_{h>y} S(h)/h^alpha: exact to hmax plus the analytic
    /// tail 1/((alpha-1) hmax^{alpha-1}). Throws std::domain_error for alpha <= 1.
    TailValue reciprocal_tail_sum(double y, int alpha) const;

    /// Sum_{h<=H} S(h)/h^2 for H <= hmax.
    double reciprocal_square_sum(double H) const;

    PartialSumCheck weighted_partial_sum_check(std::uint32_t h) const;

    /// Constant c with |f(y)| <= c y^0.6 on the table range (twice the
    /// observed maximum); used for every truncation bound involving f.
    double decay_constant() const { return decay_constant_; }

private:
    void check_y(double y, const char* what) const;
    struct Piece {
        std::uint32_t h;
        double s;  // offset into [h, h+1)
    };
    Piece locate(double y) const;

    std::uint32_t hmax_;
    Constants constants_;
    std::vector<double> values_;
    std::vector<double> excess0_;
    std::vector<double> prefix1_;
    std::vector<double> prefix2_;
    std::vector<double> f_;
    std::vector<double> f2_;
    std::vector<double> tail4_;         // int_n^hmax f/u^4
    std::vector<double> recip2_suffix_;  // Sum_{n<h<=hmax} S(h)/h^2
    double decay_constant_ = 0.0;
};

}  // namespace paircorr::singular
