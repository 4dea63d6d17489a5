#pragma once

#include <cmath>
#include <span>

namespace paircorr {

/// Neumaier-compensated accumulator. Sums of ~10^6 unit-scale terms into
/// totals of order 10^12 keep full double accuracy.
template <typename Real = double>
class CompensatedSum {
public:
    CompensatedSum() = default;
    explicit CompensatedSum(Real initial) : sum_(initial) {}

    CompensatedSum& operator+=(Real term) {
        const Real t = sum_ + term;
        if (std::abs(sum_) >= std::abs(term)) {
            compensation_ += (sum_ - t) + term;
        } else {
            compensation_ += (term - t) + sum_;
        }
        sum_ = t;
        return *this;
    }

    CompensatedSum& operator-=(Real term) { return *this += -term; }

    CompensatedSum& operator+=(const CompensatedSum& other) {
        *this += other.sum_;
        *this += other.compensation_;
        return *this;
    }

    Real value() const { return sum_ + compensation_; }

private:
    Real sum_ = 0;
    Real compensation_ = 0;
};

template <typename Real>
Real compensated_total(std::span<const Real> terms) {
    CompensatedSum<Real> acc;
    for (Real t : terms) acc += t;
    return acc.value();
}

}  // namespace paircorr
