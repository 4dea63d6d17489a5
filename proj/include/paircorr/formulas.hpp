#pragma once

#include <optional>
#include <string>
#include <vector>

#include "paircorr/form_factor.hpp"
#include "paircorr/singular_series.hpp"
#include "paircorr/zeros.hpp"

namespace paircorr::formulas {

struct FormulaParams {
    double T = 0.0;
    double x = 0.0;
    int M = 5;
    double epsilon = 0.01;
    int K = 8;

    double tau() const;     ///< T^{1-eps}
    double U() const;       ///< (log T)^M
    double delta() const;   ///< 1/(2^K U)
    double H_star() const;  ///< tau^{-2} x^{2/(1-eps)}; may be +inf
    /// Throws std::out_of_range naming the violated bound unless
    /// T/(log T)^M <= x <= T^{2-eps}; std::invalid_argument for bad M, eps, K.
    void check_range() const;
};

struct FormulaBreakdown {
    double leading = 0.0;  ///< (T/2pi) log x
    double t1 = 0.0, t2 = 0.0, t3 = 0.0, t4 = 0.0, t5 = 0.0, t6 = 0.0, t7 = 0.0;
    double total = 0.0;         ///< leading - t1 + t2 - t3 + t4 - t5 + t6 + t7
    double error_budget = 0.0;  ///< x^{1+6eps}/T + x^{1/2+7eps} + T/(log T)^{M-2}
    double H_star = 0.0;
    double singular_sum = 0.0;  ///< the Sum S(h)/h^2 factor used in t2
    /// Quadrature error estimates plus truncation bounds, scaled by each
    /// term's prefactor.
    double numerical_error = 0.0;
    std::vector<std::string> warnings;

    /// The signed recombination of the stored terms.
    double recombine() const { return leading - t1 + t2 - t3 + t4 - t5 + t6 + t7; }
};

/// Seven-term expansion of F(x,T). The table supplies S(h), f and its
/// integrals up to table.hmax().
FormulaBreakdown theorem1(const FormulaParams& params, const singular::SingularTable& table);

/// (T/2pi) log(T/2pi) - T/2pi
double corollary2_rhs(double T);

/// (T/2pi) log x + x^{-2} [ (T/2pi) log^2(T/2pi) - 2 (T/2pi) log(T/2pi) ]
double montgomery_rhs(double x, double T);

struct PiecewiseValue {
    double value;
    int branch;  ///< 1: x <= T, 2: T < x <= T^{1+eps}, 3: beyond
};

/// Throws std::domain_error for x < 1.
PiecewiseValue conjecture_piecewise(double x, double T, double epsilon);

/// int_0^alpha 1 - (sin(pi u)/(pi u))^2 du
double gue_integral(double alpha);

struct ComparisonRow {
    double x = 0.0;
    double T = 0.0;
    double F_emp = 0.0;
    double F_thm1 = 0.0;
    double F_eq01 = 0.0;
    double F_cor2 = 0.0;
    double resid_thm1 = 0.0;
    double resid_eq01 = 0.0;
    double error_budget = 0.0;
    std::vector<std::string> errors;  ///< failures of individual cells (value set to nan)
};

struct CompareOptions {
    pc::Method method = pc::Method::direct;
    pc::DirectOptions direct{};
    pc::IntegralOptions integral{};
    int M = 5;
    double epsilon = 0.01;
    int K = 8;
};

/// Log-spaced grid of `points` values from x_min to x_max (a single point uses x_min).
std::vector<double> log_grid(double x_min, double x_max, int points);

/// One row per x; cell failures never abort the grid.
std::vector<ComparisonRow> compare(const zeros::ZeroDataset& zs, double T, const std::vector<double>& xs,
                                   const singular::SingularTable& table, const CompareOptions& opts);

/// Header plus one line per row; failed cells print as nan.
std::string comparison_csv(const std::vector<ComparisonRow>& rows);

}  // namespace paircorr::formulas
