#pragma once

#include <complex>
#include <vector>

#include "paircorr/oscillatory.hpp"

namespace paircorr::smooth {

/// Smooth approximation Psi_U to the indicator of [0, 1], obtained by K+1
/// successive box averages of half-width Delta = 1/(2^K U).
class SmoothWeight {
public:
    static constexpr int kMinK = 2;
    static constexpr int kMaxK = 32;

    /// U = (log T)^M. Requires M > 2 and T > e.
    static SmoothWeight from_height(double T, int M, int K);
    /// Explicit U (used for small test configurations).
    static SmoothWeight from_scale(double U, int K);

    int M() const { return M_; }
    double U() const { return U_; }
    int K() const { return K_; }
    double delta() const { return delta_; }
    double T_ref() const { return T_ref_; }

    /// i-fold box average of the indicator of [0, 1], 0 <= i <= K+1.
    double chi(int i, double t) const;
    double psi(double t) const { return chi(K_ + 1, t); }
    /// int Psi_U(t) e(yt) dt
    std::complex<double> psi_hat(double y) const;
    double re_psi_hat(double y) const;

private:
    SmoothWeight(int M, double U, int K, double T_ref);
    int M_;
    double U_;
    int K_;
    double delta_;
    double T_ref_;
};

/// sin(z)/z with the removable singularity filled in.
double sinc(double z);

struct DerivativeCheck {
    int i;
    int j;
    double max_estimate;  ///< largest |finite difference| seen on the grid
    double bound;         ///< Delta^{-j}
};

/// Central finite differences of chi_i of order j (step Delta/64) over both
/// transition regions, for 2 <= i <= K+1 and 0 <= j <= i-1.
std::vector<DerivativeCheck> verify_derivative_bounds(const SmoothWeight& w);

struct LemmaComparison {
    double lhs;
    double rhs;
    double difference;
    double error_scale;  ///< K Delta log(1/Delta) for the power case, K Delta for general F
};

/// int_1^inf y^{-n} Re Psi_hat(Ty/(2 pi x)) dy against
/// (x/T) int_1^inf sin(Ty/x)/y^{n+1} dy. Requires T*Delta <= x.
LemmaComparison verify_lemma_2_5(int n, double T, double x, const SmoothWeight& w);

/// int_1^inf F(y) Re Psi_hat(Ty/(2 pi x)) dy against int_1^inf F(y) sinc(Ty/x) dy.
LemmaComparison verify_lemma_2_6(const osc::DecayingIntegrand& F, double T, double x,
                                 const SmoothWeight& w);

}  // namespace paircorr::smooth
