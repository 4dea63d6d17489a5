#pragma once

#include <cstdint>
#include <vector>

namespace paircorr::arith {

/// Smallest-prime-factor table built by a linear sieve.
///
/// spf(n) is prime and divides n for every 2 <= n <= limit; spf(p) == p
/// exactly for primes. The table is immutable after construction and safe
/// to share between threads.
class PrimeSieve {
public:
    static constexpr std::uint32_t kDefaultLimit = 10'000'000;

    explicit PrimeSieve(std::uint32_t limit = kDefaultLimit);

    std::uint32_t limit() const { return limit_; }
    std::uint32_t smallest_prime_factor(std::uint32_t n) const;
    bool is_prime(std::uint32_t n) const;
    const std::vector<std::uint32_t>& primes() const { return primes_; }

    /// Distinct prime divisors of n in increasing order.
    std::vector<std::uint32_t> distinct_prime_factors(std::uint32_t n) const;

private:
    std::uint32_t limit_;
    std::vector<std::uint32_t> spf_;
    std::vector<std::uint32_t> primes_;
};

/// Lambda(n): log p when n = p^k, else 0. Throws std::out_of_range for
/// n == 0 or n > sieve.limit().
double von_mangoldt(std::uint64_t n, const PrimeSieve& sieve);

/// Sum_{n <= x} Lambda(n)^2 n, compensated.
double lambda_square_sum(std::uint64_t x, const PrimeSieve& sieve);

/// Main term x^2 log(x)/2 - x^2/4 of lambda_square_sum.
double lambda_square_sum_main(double x);

struct TruncatedTail {
    double value;
    /// Bound on the neglected part Sum_{n > limit}, of order (log limit)^2/limit^2.
    double remainder_bound;
};

/// Sum_{x < n <= limit} Lambda(n)^2 / n^3.
TruncatedTail lambda_square_tail(std::uint64_t x, std::uint64_t limit, const PrimeSieve& sieve);

/// Main term log(x)/(2x^2) + 1/(4x^2) of the full tail.
double lambda_square_tail_main(double x);

/// Sum_{n <= N} Lambda(n) Lambda(n + d) for d != 0 (negative d allowed).
double twin_sum(std::uint64_t N, std::int64_t d, const PrimeSieve& sieve);

}  // namespace paircorr::arith
