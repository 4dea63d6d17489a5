#include "paircorr/arithmetic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "paircorr/summation.hpp"

namespace paircorr::arith {

PrimeSieve::PrimeSieve(std::uint32_t limit) : limit_(limit), spf_(std::size_t(limit) + 1, 0) {
    if (limit < 2) throw std::invalid_argument("sieve limit must be at least 2");
    for (std::uint32_t i = 2; i <= limit; ++i) {
        if (spf_[i] == 0) {
            spf_[i] = i;
            primes_.push_back(i);
        }
        for (std::uint32_t p : primes_) {
            const std::uint64_t m = std::uint64_t(p) * i;
            if (p > spf_[i] || m > limit) break;
            spf_[m] = p;
        }
    }
}

std::uint32_t PrimeSieve::smallest_prime_factor(std::uint32_t n) const {
    if (n < 2 || n > limit_) {
        throw std::out_of_range("smallest_prime_factor: " + std::to_string(n) +
                                " outside [2, " + std::to_string(limit_) + "]");
    }
    return spf_[n];
}

bool PrimeSieve::is_prime(std::uint32_t n) const {
    if (n > limit_) throw std::out_of_range("is_prime: beyond sieve limit");
    return n >= 2 && spf_[n] == n;
}

std::vector<std::uint32_t> PrimeSieve::distinct_prime_factors(std::uint32_t n) const {
    if (n == 0 || n > limit_) throw std::out_of_range("distinct_prime_factors: out of range");
    std::vector<std::uint32_t> out;
    while (n > 1) {
        const std::uint32_t p = spf_[n];
        out.push_back(p);
        while (n % p == 0) n /= p;
    }
    return out;
}

namespace {

void check_range(std::uint64_t n, const PrimeSieve& sieve, const char* what) {
    if (n > sieve.limit()) {
        throw std::out_of_range(std::string(what) + ": argument " + std::to_string(n) +
                                " exceeds sieve limit " + std::to_string(sieve.limit()));
    }
}

// Lambda without range checks; n in [1, limit].
double lambda_unchecked(std::uint32_t n, const PrimeSieve& sieve) {
    if (n < 2) return 0.0;
    const std::uint32_t p = sieve.smallest_prime_factor(n);
    std::uint32_t m = n;
    while (m % p == 0) m /= p;
    return m == 1 ? std::log(double(p)) : 0.0;
}

}  // namespace

double von_mangoldt(std::uint64_t n, const PrimeSieve& sieve) {
    if (n == 0) throw std::out_of_range("von_mangoldt: n must be positive");
    check_range(n, sieve, "von_mangoldt");
    return lambda_unchecked(std::uint32_t(n), sieve);
}

double lambda_square_sum(std::uint64_t x, const PrimeSieve& sieve) {
    check_range(x, sieve, "lambda_square_sum");
    CompensatedSum<double> acc;
    // Only prime powers contribute; walk primes and their powers.
    for (std::uint32_t p : sieve.primes()) {
        if (p > x) break;
        const double lp = std::log(double(p));
        const double w = lp * lp;
        for (std::uint64_t q = p; q <= x; q *= p) acc += w * double(q);
    }
    return acc.value();
}

double lambda_square_sum_main(double x) { return 0.5 * x * x * std::log(x) - 0.25 * x * x; }

TruncatedTail lambda_square_tail(std::uint64_t x, std::uint64_t limit, const PrimeSieve& sieve) {
    if (limit < x) throw std::invalid_argument("lambda_square_tail: limit below x");
    check_range(limit, sieve, "lambda_square_tail");
    // Smallest terms first.
    std::vector<double> terms;
    for (std::uint32_t p : sieve.primes()) {
        if (p > limit) break;
        const double lp = std::log(double(p));
        for (std::uint64_t q = p; q <= limit; q *= p) {
            if (q > x) {
                const double qd = double(q);
                terms.push_back(lp * lp / (qd * qd * qd));
            }
        }
    }
    CompensatedSum<double> acc;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) acc += *it;
    // Sum_{n > L} Lambda(n)^2/n^3 <= 2 * integral of log(u)/u^3 beyond L (Chebyshev-type
    // bound psi_2(u) <= 2 u log u).
    const double L = double(limit);
    const double bound = 2.0 * (std::log(L) / (2.0 * L * L) + 1.0 / (4.0 * L * L)) * 2.0;
    return {acc.value(), bound};
}

double lambda_square_tail_main(double x) {
    return 0.5 * std::log(x) / (x * x) + 0.25 / (x * x);
}

double twin_sum(std::uint64_t N, std::int64_t d, const PrimeSieve& sieve) {
    if (d == 0) throw std::invalid_argument("twin_sum: shift d must be nonzero");
    const std::uint64_t ad = std::uint64_t(d < 0 ? -d : d);
    if (N + ad > sieve.limit()) {
        throw std::out_of_range("twin_sum: N + |d| exceeds sieve limit");
    }
    CompensatedSum<double> acc;
    for (std::uint32_t p : sieve.primes()) {
        if (p > N) break;
        const double lp = std::log(double(p));
        for (std::uint64_t q = p; q <= N; q *= p) {
            const std::int64_t m = std::int64_t(q) + d;
            if (m < 2) continue;
            const double lm = lambda_unchecked(std::uint32_t(m), sieve);
            if (lm != 0.0) acc += lp * lm;
        }
    }
    return acc.value();
}

}  // namespace paircorr::arith
