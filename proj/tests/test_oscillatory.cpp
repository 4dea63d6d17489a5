#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "oracles.hpp"
#include "paircorr/oscillatory.hpp"

using namespace paircorr;

TEST_CASE("Si and ci against reference values") {
    for (const auto& r : oracle::kSiCi) {
        CHECK(osc::sine_integral(r.x) == doctest::Approx(r.si).epsilon(1e-14));
        CHECK(std::abs(osc::cosine_integral(r.x) - r.ci) < 2e-15);
    }
    CHECK(osc::sine_integral(0.0) == 0.0);
    CHECK(osc::sine_integral(-2.0) == -osc::sine_integral(2.0));
    CHECK(osc::sine_integral(1e8) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-8));
    CHECK_THROWS_AS(osc::cosine_integral(0.0), std::domain_error);
}

TEST_CASE("Si and ci are continuous across the method switch") {
    CHECK(osc::sine_integral(4.0) == doctest::Approx(osc::sine_integral(std::nextafter(4.0, 5.0))).epsilon(1e-14));
    CHECK(osc::cosine_integral(4.0) == doctest::Approx(osc::cosine_integral(std::nextafter(4.0, 5.0))).epsilon(1e-13));
}

TEST_CASE("derivatives of Si and ci") {
    const double h = 1e-4;
    for (double x : {0.2, 1.0, 3.0, 3.999, 4.001, 6.0, 20.0, 100.0}) {
        const double dsi = (osc::sine_integral(x + h) - osc::sine_integral(x - h)) / (2 * h);
        const double dci = (osc::cosine_integral(x + h) - osc::cosine_integral(x - h)) / (2 * h);
        CHECK(std::abs(dsi - std::sin(x) / x) <= 1e-6);
        CHECK(std::abs(dci - std::cos(x) / x) <= 1e-6);
    }
}

TEST_CASE("even-power tails: closed form against reference values") {
    for (const auto& r : oracle::kEvenPowerTail) {
        INFO("n=" << r.n << " a=" << r.a);
        CHECK(std::abs(osc::sin_over_even_power_tail(r.n, r.a) - r.value) <= 1e-10);
        CHECK(std::abs(osc::tail_sin_integral(2 * r.n, r.a) - r.value) <= 1e-10);
    }
    CHECK_THROWS_AS(osc::sin_over_even_power_tail(0, 1.0), std::domain_error);
    CHECK_THROWS_AS(osc::sin_over_even_power_tail(1, 0.0), std::domain_error);
}

TEST_CASE("even-power tails: closed form against adaptive quadrature") {
    osc::QuadratureSpec spec;
    spec.abs_tol = 1e-12;
    spec.rel_tol = 1e-13;
    spec.max_subdivisions = 400000;
    for (int n : {1, 2, 3}) {
        for (double a : {0.1, 1.0, 5.0, 20.0}) {
            const double Y = std::pow(2.0 / (a * 1e-12), 1.0 / (2 * n));
            const auto q = osc::adaptive_osc_quad([&](double y) { return std::sin(a * y) * std::pow(y, -2 * n); }, 1.0, Y,
                                                  spec, {}, a);
            CHECK(std::abs(q.value - osc::sin_over_even_power_tail(n, a)) <= 1e-8);
        }
    }
}

TEST_CASE("general power tails") {
    for (const auto& r : oracle::kPowerTail) {
        INFO("m=" << r.n << " a=" << r.a);
        CHECK(std::abs(osc::tail_sin_integral(r.n, r.a) - r.value) <= 1e-10);
    }
    CHECK_THROWS_AS(osc::tail_sin_integral(1, 1.0), std::domain_error);
    CHECK_THROWS_AS(osc::tail_sin_integral(2, -1.0), std::domain_error);
}

TEST_CASE("Gauss-Kronrod panel") {
    const auto r = osc::gauss_kronrod21([](double x) { return std::pow(x, 30); }, 0.0, 1.0);
    CHECK(r.value == doctest::Approx(1.0 / 31).epsilon(1e-14));
    const auto s = osc::gauss_kronrod21([](double x) { return std::exp(x); }, 0.0, 1.0);
    CHECK(s.value == doctest::Approx(std::exp(1.0) - 1).epsilon(1e-15));
    CHECK(s.error < 1e-12);
}

TEST_CASE("adaptive quadrature") {
    osc::QuadratureSpec spec;
    const auto r = osc::adaptive_osc_quad([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, spec);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-13));
    const auto k = osc::adaptive_osc_quad([](double x) { return std::abs(x - 0.3); }, 0.0, 1.0, spec, {0.3});
    CHECK(k.value == doctest::Approx(0.045 + 0.245).epsilon(1e-13));
    const auto o = osc::adaptive_osc_quad([](double x) { return std::cos(200 * x); }, 0.0, 1.0, spec, {}, 200.0);
    CHECK(o.value == doctest::Approx(std::sin(200.0) / 200).epsilon(1e-11));
    CHECK(o.intervals >= 63);
    const auto sq = osc::adaptive_osc_quad([](double x) { return std::sqrt(x); }, 0.0, 1.0, spec);
    CHECK(std::abs(sq.value - 2.0 / 3) <= 1e-10);
    spec.abs_tol = 0;
    CHECK_THROWS(osc::adaptive_osc_quad([](double x) { return x; }, 0.0, 1.0, spec));
}

TEST_CASE("sinc-weighted integrals") {
    osc::DecayingIntegrand F;
    F.fn = [](double y) { return 1.0 / (y * y); };
    F.decay_constant = 1.0;
    F.decay_exponent = 2.0;
    osc::DecayingIntegrand G;
    G.fn = [](double y) { return std::log(y) / (y * y * y); };
    G.decay_constant = 0.5;  // log y <= y/e
    G.decay_exponent = 2.0;
    osc::QuadratureSpec spec;
    spec.abs_tol = 1e-10;
    const double expect_f[] = {0.648794592361431876, -0.0546919451500540692};
    const double expect_g[] = {0.159749233011195647, -0.0123992486290707429};
    int i = 0;
    for (double a : {0.5, 3.0}) {
        const auto rf = osc::sinc_weighted_integral(F, a, spec);
        const auto rg = osc::sinc_weighted_integral(G, a, spec);
        CHECK(std::abs(rf.value - expect_f[i]) <= rf.error_estimate + rf.truncation_bound + 1e-12);
        CHECK(std::abs(rf.value - expect_f[i]) <= 1e-8);
        CHECK(std::abs(rg.value - expect_g[i]) <= 1e-8);
        CHECK(rf.truncation_point > 1);
        ++i;
    }
    osc::DecayingIntegrand bare;
    bare.fn = F.fn;
    CHECK_THROWS_AS(osc::sinc_weighted_integral(bare, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(osc::sinc_weighted_integral(F, 0.0), std::domain_error);
}

TEST_CASE("sinc-weighted integral tends to the plain integral as a shrinks") {
    osc::DecayingIntegrand F;
    F.fn = [](double y) { return 1.0 / (y * y); };
    F.decay_constant = 1.0;
    F.decay_exponent = 2.0;
    double prev = osc::sinc_weighted_integral(F, 1.0).value;
    double prev_gap = std::numeric_limits<double>::infinity();
    for (double a = 0.5; a >= 1.0 / 64; a /= 2) {
        const double v = osc::sinc_weighted_integral(F, a).value;
        CHECK(std::abs(v - prev) < prev_gap);
        prev_gap = std::abs(v - prev);
        prev = v;
    }
    CHECK(std::abs(1 - prev) < 0.02);
}

TEST_CASE("negligible sinc-weighted integral is reported through its bound") {
    osc::DecayingIntegrand F;
    F.fn = [](double y) { return 1.0 / (y * y); };
    F.decay_constant = 1.0;
    F.decay_exponent = 2.0;
    osc::QuadratureSpec spec;
    spec.abs_tol = 1e-6;
    const auto r = osc::sinc_weighted_integral(F, 1e7, spec);
    CHECK(r.value == 0.0);
    CHECK(r.truncation_bound <= spec.abs_tol / 2);
    CHECK(std::abs(osc::sinc_weighted_integral(F, 1e5, spec).value) < 1e-5);
}
