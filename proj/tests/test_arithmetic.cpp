#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "oracles.hpp"
#include "paircorr/arithmetic.hpp"
#include "paircorr/singular_series.hpp"

using namespace paircorr;

namespace {
const arith::PrimeSieve& big_sieve() {
    static const arith::PrimeSieve s(2'000'000);
    return s;
}
}  // namespace

TEST_CASE("sieve agrees with trial division") {
    const arith::PrimeSieve s(10'000);
    for (std::uint32_t n = 2; n <= 10'000; ++n) {
        REQUIRE(s.smallest_prime_factor(n) == oracle::smallest_factor(n));
        REQUIRE(s.is_prime(n) == oracle::is_prime(n));
    }
    CHECK(s.primes().size() == 1229);
    CHECK(s.distinct_prime_factors(360) == std::vector<std::uint32_t>{2, 3, 5});
    CHECK(s.distinct_prime_factors(1).empty());
}

TEST_CASE("sieve rejects out-of-range queries") {
    const arith::PrimeSieve s(100);
    CHECK_THROWS_AS(s.smallest_prime_factor(101), std::out_of_range);
    CHECK_THROWS_AS(s.smallest_prime_factor(1), std::out_of_range);
    CHECK_THROWS_AS(arith::PrimeSieve(1), std::invalid_argument);
    CHECK(!s.is_prime(0));
    CHECK(!s.is_prime(1));
}

TEST_CASE("von Mangoldt is positive exactly on prime powers") {
    const arith::PrimeSieve s(10'000);
    for (std::uint32_t n = 1; n <= 10'000; ++n) {
        REQUIRE(arith::von_mangoldt(n, s) == doctest::Approx(oracle::von_mangoldt(n)).epsilon(1e-15));
    }
    CHECK(arith::von_mangoldt(1024, s) == doctest::Approx(std::log(2.0)));
    CHECK(arith::von_mangoldt(12, s) == 0.0);
    CHECK_THROWS_AS(arith::von_mangoldt(0, s), std::out_of_range);
    CHECK_THROWS_AS(arith::von_mangoldt(10'001, s), std::out_of_range);
}

TEST_CASE("lambda square sum matches a direct loop") {
    const arith::PrimeSieve s(10'000);
    double brute = 0;
    for (std::uint64_t n = 1; n <= 5000; ++n) {
        const double l = oracle::von_mangoldt(n);
        brute += l * l * double(n);
    }
    CHECK(arith::lambda_square_sum(5000, s) == doctest::Approx(brute).epsilon(1e-13));
    CHECK(arith::lambda_square_sum(1, s) == 0.0);
    CHECK_THROWS_AS(arith::lambda_square_sum(10'001, s), std::out_of_range);
}

TEST_CASE("lambda square sum residual stays below 3 x^1.6") {
    const auto& s = big_sieve();
    for (double x : {1e4, 1e5, 1e6}) {
        const double r = arith::lambda_square_sum(std::uint64_t(x), s) - arith::lambda_square_sum_main(x);
        CHECK(std::abs(r) / std::pow(x, 1.6) <= 3.0);
    }
}

TEST_CASE("lambda square tail") {
    const arith::PrimeSieve s(20'000);
    double brute = 0;
    for (std::uint64_t n = 101; n <= 20'000; ++n) {
        const double l = oracle::von_mangoldt(n);
        brute += l * l / std::pow(double(n), 3);
    }
    const auto t = arith::lambda_square_tail(100, 20'000, s);
    CHECK(t.value == doctest::Approx(brute).epsilon(1e-12));
    CHECK(t.remainder_bound > 0);
    CHECK(t.remainder_bound < 1e-7);
    CHECK_THROWS_AS(arith::lambda_square_tail(200, 100, s), std::invalid_argument);

    const auto& bs = big_sieve();
    for (double x : {1e2, 1e3}) {
        const auto tail = arith::lambda_square_tail(std::uint64_t(x), bs.limit(), bs);
        const double r = std::abs(tail.value - arith::lambda_square_tail_main(x)) + tail.remainder_bound;
        CHECK(r * std::pow(x, 2.4) <= 3.0);
    }
}

TEST_CASE("twin sum") {
    const arith::PrimeSieve s(20'000);
    double brute = 0;
    for (std::uint64_t n = 1; n <= 10'000; ++n) brute += oracle::von_mangoldt(n) * oracle::von_mangoldt(n + 2);
    CHECK(arith::twin_sum(10'000, 2, s) == doctest::Approx(brute).epsilon(1e-13));

    double back = 0;
    for (std::uint64_t n = 4; n <= 10'000; ++n) back += oracle::von_mangoldt(n) * oracle::von_mangoldt(n - 3);
    CHECK(arith::twin_sum(10'000, -3, s) == doctest::Approx(back).epsilon(1e-13));

    CHECK_THROWS_AS(arith::twin_sum(10, 0, s), std::invalid_argument);
    CHECK_THROWS_AS(arith::twin_sum(20'000, 2, s), std::out_of_range);
}

TEST_CASE("twin sum follows the singular series") {
    const auto& s = big_sieve();
    const double N = 1e6;
    const double ratio = arith::twin_sum(std::uint64_t(N), 2, s) / (oracle::singular_series(2) * N);
    CHECK(ratio >= 0.9);
    CHECK(ratio <= 1.1);
    for (int d : {1, 3, 5}) CHECK(arith::twin_sum(std::uint64_t(N), d, s) / N < 0.02);
    // d = 6 has S(6) = 2 S(2)
    const double r6 = arith::twin_sum(std::uint64_t(N), 6, s) / (oracle::singular_series(6) * N);
    CHECK(std::abs(r6 - 1) < 0.1);
}
