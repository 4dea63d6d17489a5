#pragma once

#include <cstdint>
#include <string_view>

#include "paircorr/zeros.hpp"

namespace paircorr::pc {

/// w(u) = 4/(4 + u^2)
inline double weight_w(double u) { return 4.0 / (4.0 + u * u); }

enum class Method { direct, integral };
std::string_view method_name(Method m);

struct PairCorrelationEstimate {
    double value = 0.0;
    Method method = Method::direct;
    double truncation_error_bound = 0.0;
    std::uint64_t pair_count_used = 0;  ///< off-diagonal pairs gamma < gamma' summed
};

struct DirectOptions {
    bool exact = false;
    /// Pairs with gap above this are dropped; <= 0 selects the default
    /// 4000 log(T/2pi)/pi, which keeps the truncation bound near N0/1000.
    double gap_cutoff = 0.0;
};

double default_gap_cutoff(double T);

/// F(x,T) = Sum_{gamma, gamma' <= T} x^{i(gamma - gamma')} w(gamma - gamma').
/// Throws std::domain_error for x <= 1 and std::out_of_range when T exceeds
/// the dataset height.
PairCorrelationEstimate f_direct(const zeros::ZeroDataset& zs, double x, double T,
                                 const DirectOptions& opts = {});

/// Same sum parametrised by L = log x; defined for every real L and even in L.
PairCorrelationEstimate f_direct_log(const zeros::ZeroDataset& zs, double L, double T,
                                     const DirectOptions& opts = {});

struct IntegralOptions {
    double abs_tol = 1e-8;
};

/// F(x,T) = int e^{-2|t|} |Sum_{gamma <= T} e^{i gamma (log x - t)}|^2 dt.
PairCorrelationEstimate f_integral(const zeros::ZeroDataset& zs, double x, double T,
                                   const IntegralOptions& opts = {});

/// Ordered pairs with 0 < gamma - gamma' <= 2 pi alpha / log T, both <= T.
std::uint64_t weak_pair_count(const zeros::ZeroDataset& zs, double T, double alpha);

}  // namespace paircorr::pc
