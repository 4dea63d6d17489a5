#pragma once

#include <cstddef>
#include <vector>

namespace paircorr::quad {

/// n-point Gauss-Legendre rule on [-1, 1], nodes ascending.
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Cached rule; nodes are Newton-refined Legendre roots (accurate to ~1 ulp).
const GaussLegendreRule& gauss_legendre(std::size_t n);

/// Fixed-order Gauss-Legendre on [a, b].
template <typename F>
double gauss_legendre_integrate(F&& fn, double a, double b, std::size_t n) {
    const auto& rule = gauss_legendre(n);
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        acc += rule.weights[i] * fn(mid + half * rule.nodes[i]);
    }
    return acc * half;
}

}  // namespace paircorr::quad
