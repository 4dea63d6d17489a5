#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "oracles.hpp"
#include "paircorr/formulas.hpp"
#include "paircorr/oscillatory.hpp"

using namespace paircorr;
using formulas::FormulaParams;

namespace {

constexpr double kPi = std::numbers::pi;

const singular::SingularTable& table() {
    static const arith::PrimeSieve sieve(10'000'000);
    static const auto constants =
        singular::Constants::from_twin_prime_constant(singular::twin_prime_constant_corrected(10'000'000, sieve));
    static const singular::SingularTable t(1'000'000, constants, sieve);
    return t;
}

}  // namespace

TEST_CASE("derived parameters") {
    const FormulaParams p{1e4, 1e4, 5, 0.01, 8};
    CHECK(p.tau() == doctest::Approx(std::pow(1e4, 0.99)));
    CHECK(p.U() == doctest::Approx(std::pow(std::log(1e4), 5)));
    CHECK(p.delta() == doctest::Approx(1 / (256 * p.U())));
    CHECK(p.H_star() == doctest::Approx(std::pow(p.tau(), -2) * std::pow(1e4, 2 / 0.99)).epsilon(1e-12));
    const FormulaParams huge{1e4, std::pow(1e4, 1.95), 5, 0.05, 8};
    CHECK(std::isfinite(huge.H_star()));
}

TEST_CASE("range guard names the bound") {
    const auto msg = [](FormulaParams p) -> std::string {
        try {
            p.check_range();
        } catch (const std::out_of_range& e) {
            return e.what();
        }
        return "";
    };
    CHECK(msg({1e4, 10.0, 3}).find("below T/(log T)^M") != std::string::npos);
    CHECK(msg({1e4, 1e8}).find("above T^(2-eps)") != std::string::npos);
    CHECK(msg({1e4, 1e4}).empty());
    CHECK_THROWS_AS(FormulaParams({1e4, 1e4, 2}).check_range(), std::invalid_argument);
    CHECK_THROWS_AS(FormulaParams({1e4, 1e4, 5, 0.2}).check_range(), std::invalid_argument);
    CHECK_THROWS_AS(FormulaParams({1e4, 1e4, 5, 0.01, 40}).check_range(), std::invalid_argument);
    CHECK_THROWS_AS(formulas::theorem1({1e4, 1e8}, table()), std::out_of_range);
}

TEST_CASE("terms at x = T") {
    const double T = 1e4, x = 1e4;
    const auto b = formulas::theorem1({T, x}, table());
    const double a = 1.0;
    CHECK(b.leading == doctest::Approx(T / (2 * kPi) * std::log(x)));
    CHECK(b.t1 == doctest::Approx(4 * x / (3 * kPi) * osc::sine_integral(a)));
    CHECK(b.t3 == doctest::Approx(x / (2 * kPi) * osc::tail_sin_integral(2, a)));
    CHECK(b.t4 == doctest::Approx((oracle::constant_B() / 2 + 11.0 / 12) * x / kPi * osc::tail_sin_integral(4, a)));
    for (double t : {b.t1, b.t2, b.t3, b.t4, b.t5, b.t6, b.t7}) CHECK(std::isfinite(t));
    CHECK(b.total == b.recombine());
    CHECK(b.total == b.leading - b.t1 + b.t2 - b.t3 + b.t4 - b.t5 + b.t6 + b.t7);
    const double budget = std::pow(x, 1.06) / T + std::pow(x, 0.57) + T / std::pow(std::log(T), 3);
    CHECK(b.error_budget == doctest::Approx(budget));
    CHECK(b.numerical_error < 1.0);
}

TEST_CASE("singular factor in t2") {
    // x = T^1.8: H* is far above the table, so the factor is the full sum plus tail
    const double T = 1e4, x = std::pow(T, 1.8);
    const auto b = formulas::theorem1({T, x}, table());
    CHECK(b.H_star > 1e6);
    const double limit = 7.0 / 4 + oracle::constant_B() / 2 + 6 * table().fluctuation_tail_moment(1.0).value;
    CHECK(std::abs(b.singular_sum - limit) <= 1e-4);
    const double half = std::sin(T / x / 2);
    CHECK(b.t2 == doctest::Approx(x * x / (kPi * T) * b.singular_sum * 2 * half * half));

    // small x: H* < 1 leaves the sum empty and says so
    const auto low = formulas::theorem1({T, T / std::pow(std::log(T), 4)}, table());
    CHECK(low.H_star < 1);
    CHECK(low.t2 == 0.0);
    CHECK(low.warnings.size() == 1);
}

TEST_CASE("reduction to (T/2pi) log(T/2pi) - T/2pi") {
    const double T = 1e4;
    for (double e : {1.2, 1.4, 1.5, 1.6, 1.8}) {
        const double x = std::pow(T, e);
        const auto b = formulas::theorem1({T, x}, table());
        INFO("exponent " << e);
        CHECK(std::abs(b.total - formulas::corollary2_rhs(T)) <= T * std::pow(T / x, 0.4));
        // T1 -> 4T/(3pi) as x grows
        if (e >= 1.6) CHECK(b.t1 == doctest::Approx(4 * T / (3 * kPi)).epsilon(1e-3));
    }
}

TEST_CASE("leading term within 3x below x = T") {
    const double T = 1e6, lt = std::log(T);
    for (double x : {T / (lt * lt * lt), T / (lt * lt * lt * lt), T}) {
        const auto b = formulas::theorem1({T, x}, table());
        CHECK(std::abs(b.total - b.leading) <= 3 * x);
    }
}

TEST_CASE("closed-form references") {
    CHECK(formulas::corollary2_rhs(2 * kPi) == doctest::Approx(-1.0));
    CHECK(std::abs(formulas::corollary2_rhs(2 * kPi * std::numbers::e)) < 1e-14);
    CHECK(formulas::corollary2_rhs(1e4) == doctest::Approx(1e4 / (2 * kPi) * (std::log(1e4 / (2 * kPi)) - 1)));
    const double T = 1e5, l = std::log(T / (2 * kPi));
    CHECK(formulas::montgomery_rhs(1.0, T) == doctest::Approx(T / (2 * kPi) * (l * l - 2 * l)));
    const double x = T / std::log(T);
    CHECK(formulas::montgomery_rhs(x, T) == doctest::Approx(T / (2 * kPi) * std::log(x)).epsilon(1e-6));
}

TEST_CASE("piecewise prediction") {
    const double T = 1e4;
    CHECK(formulas::conjecture_piecewise(2.0, T, 0.01).branch == 1);
    CHECK(formulas::conjecture_piecewise(T, T, 0.01).branch == 1);
    CHECK(formulas::conjecture_piecewise(std::pow(T, 1.2), T, 0.25).branch == 2);
    CHECK(formulas::conjecture_piecewise(std::pow(T, 1.2), T, 0.01).branch == 3);
    const auto left = formulas::conjecture_piecewise(T, T, 0.01);
    const auto right = formulas::conjecture_piecewise(T * 1.000001, T, 0.01);
    CHECK(std::abs(left.value - right.value) <= T);
    CHECK(right.value == formulas::corollary2_rhs(T));
    CHECK_THROWS_AS(formulas::conjecture_piecewise(0.5, T, 0.01), std::domain_error);
}

TEST_CASE("GUE integral") {
    CHECK(formulas::gue_integral(0.0) == 0.0);
    const double a = 0.01;
    CHECK(formulas::gue_integral(a) == doctest::Approx(kPi * kPi * a * a * a / 9).epsilon(1e-4));
    for (const auto& [alpha, value] : oracle::kGue) CHECK(std::abs(formulas::gue_integral(alpha) - value) <= 1e-10);
    CHECK_THROWS_AS(formulas::gue_integral(-1.0), std::domain_error);
}

TEST_CASE("log grid") {
    CHECK(formulas::log_grid(1, 10, 0).empty());
    CHECK(formulas::log_grid(3, 10, 1) == std::vector<double>{3.0});
    const auto g = formulas::log_grid(10, 1000, 3);
    CHECK(g[0] == 10);
    CHECK(g[1] == doctest::Approx(100));
    CHECK(g[2] == 1000);
    CHECK_THROWS(formulas::log_grid(10, 1, 3));
}

TEST_CASE("comparison rows") {
    const auto zs = zeros::make_dataset(zeros::synthetic_ordinates(400), "synthetic");
    const double T = zs.max_height;
    formulas::CompareOptions opts;
    opts.M = 3;
    CHECK(formulas::compare(zs, T, {}, table(), opts).empty());
    CHECK(formulas::comparison_csv({}) == "x,T,F_emp,F_thm1,F_eq01,F_cor2,resid_thm1,resid_eq01,error_budget\n");

    // the second x is below the theorem's range: that cell fails, the row survives
    const std::vector<double> xs{T, 1.5};
    const auto rows = formulas::compare(zs, T, xs, table(), opts);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].errors.empty());
    CHECK(rows[0].F_emp == pc::f_direct(zs, T, T).value);
    CHECK(rows[0].F_thm1 == formulas::theorem1({T, T, 3}, table()).total);
    CHECK(rows[0].F_eq01 == formulas::montgomery_rhs(T, T));
    CHECK(rows[0].resid_thm1 == rows[0].F_emp - rows[0].F_thm1);
    CHECK(std::isnan(rows[1].F_thm1));
    CHECK(rows[1].errors.size() == 1);
    CHECK(!std::isnan(rows[1].F_emp));
    const auto csv = formulas::comparison_csv(rows);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
    CHECK(csv.find("nan") != std::string::npos);
}
