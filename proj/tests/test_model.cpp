#include <cmath>
#include <numbers>

#include "doctest.h"
#include "gsbq/errors.hpp"
#include "gsbq/model.hpp"

using namespace gsbq;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("model: admissible region boundaries") {
    CHECK(beta_star(0.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(beta_star(0.6) == doctest::Approx(1.6).epsilon(1e-15));
    CHECK(c_star(-1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(c_star(1.0) == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-15));
    CHECK(c_star(2.0) == doctest::Approx(0.0).epsilon(1e-15));

    CHECK(params_valid({-1.0, 0.3, 2.0, Parity::Odd}));
    CHECK_FALSE(params_valid({2.5, 0.0, 2.0, Parity::Odd}));
    CHECK_FALSE(params_valid({-1.0, 1.0, 2.0, Parity::Odd}));
    CHECK_FALSE(params_valid({-1.0, 0.0, 1.0, Parity::Odd}));
    CHECK_THROWS_AS(validate({2.5, 0.0, 2.0, Parity::Odd}), DomainError);
    CHECK_THROWS_AS(validate({-1.0, 1.2, 2.0, Parity::Odd}), DomainError);
    CHECK_THROWS_AS(validate({-1.0, 0.0, 0.5, Parity::Odd}), DomainError);
}

TEST_CASE("model: nonlinearity parts for both families") {
    // odd family, p = 2: f = |u|u, F = |u|^3/3, f' = 2|u|
    CHECK(nonlinearity_eval(-2.0, 2.0, Parity::Odd, NonlinPart::Value) ==
          doctest::Approx(-4.0).epsilon(1e-15));
    CHECK(nonlinearity_eval(-2.0, 2.0, Parity::Odd, NonlinPart::Primitive) ==
          doctest::Approx(8.0 / 3.0).epsilon(1e-15));
    CHECK(nonlinearity_eval(-2.0, 2.0, Parity::Odd, NonlinPart::Slope) ==
          doctest::Approx(4.0).epsilon(1e-15));
    // even family, p = 2: f = u^2, F = u^3/3, f' = 2u
    CHECK(nonlinearity_eval(-2.0, 2.0, Parity::Even, NonlinPart::Value) ==
          doctest::Approx(4.0).epsilon(1e-15));
    CHECK(nonlinearity_eval(-2.0, 2.0, Parity::Even, NonlinPart::Primitive) ==
          doctest::Approx(-8.0 / 3.0).epsilon(1e-15));
    CHECK(nonlinearity_eval(-2.0, 2.0, Parity::Even, NonlinPart::Slope) ==
          doctest::Approx(-4.0).epsilon(1e-15));
    // fractional exponent stays finite at the origin
    CHECK(nonlinearity_eval(0.0, 1.5, Parity::Odd, NonlinPart::Slope) == 0.0);
    CHECK(nonlinearity_eval(0.0, 1.5, Parity::Even, NonlinPart::Value) == 0.0);
    CHECK(nonlinearity_smooth(2.0));
    CHECK(nonlinearity_smooth(3.5));
    CHECK_FALSE(nonlinearity_smooth(1.7));
}

TEST_CASE("model: homogeneity of the nonlinearity") {
    for (Parity parity : {Parity::Odd, Parity::Even}) {
        for (double u : {-1.3, 0.4, 2.2}) {
            const double p = 2.6;
            const double f1 = nonlinearity_eval(u, p, parity, NonlinPart::Value);
            const double f2 = nonlinearity_eval(2.0 * u, p, parity, NonlinPart::Value);
            CHECK(f2 == doctest::Approx(std::pow(2.0, p) * f1).epsilon(1e-13));
        }
    }
}

TEST_CASE("model: decay regimes and their constants") {
    DispersionConstants two = dispersion_constants({-3.0, 0.0, 2.0, Parity::Odd});
    CHECK(two.regime == DecayRegime::TwoRealRates);
    // rate equation l^4 - 3 l^2 + 1 = 0: golden-ratio pair
    CHECK(two.lambda1 == doctest::Approx((std::sqrt(5.0) - 1.0) / 2.0).epsilon(1e-14));
    CHECK(two.lambda2 == doctest::Approx((std::sqrt(5.0) + 1.0) / 2.0).epsilon(1e-14));

    DispersionConstants dbl = dispersion_constants({-2.0, 0.0, 2.0, Parity::Odd});
    CHECK(dbl.regime == DecayRegime::DoubleRate);
    CHECK(dbl.sigma == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(dbl.omega == doctest::Approx(1.0).epsilon(1e-12));

    DispersionConstants osc = dispersion_constants({0.0, 0.0, 2.0, Parity::Odd});
    CHECK(osc.regime == DecayRegime::OscillatoryRate);
    CHECK(osc.sigma == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-14));
    CHECK(osc.omega == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-14));

    CHECK_THROWS_AS(dispersion_constants({2.5, 0.0, 2.0, Parity::Odd}), DomainError);
}

TEST_CASE("model: kernel center values in all three regimes") {
    CHECK(kernel_eval(0.0, 0.0, 0.0) == doctest::Approx(pi / std::sqrt(2.0)).epsilon(1e-13));
    CHECK(kernel_eval(0.0, -2.0, 0.0) == doctest::Approx(pi / 2.0).epsilon(1e-13));
    CHECK(kernel_eval(0.0, -3.0, 0.0) == doctest::Approx(pi / std::sqrt(5.0)).epsilon(1e-13));
}

TEST_CASE("model: closed-form kernel matches the quadrature oracle") {
    const double betas_cs[6][2] = {{-3.0, 0.0}, {-2.0, 0.0},  {-1.0, 0.3},
                                   {0.0, 0.0},  {0.5, 0.2}, {1.5, 0.3}};
    for (const auto& bc : betas_cs) {
        for (double x : {0.0, 0.3, 1.1, 2.7, 6.4, -1.7}) {
            const double closed = kernel_eval(x, bc[0], bc[1]);
            const double oracle = kernel_oracle(x, bc[0], bc[1]);
            CAPTURE(bc[0]);
            CAPTURE(bc[1]);
            CAPTURE(x);
            CHECK(std::abs(closed - oracle) <= 1e-8);
        }
    }
}

TEST_CASE("model: kernel is continuous across the double-rate seam") {
    for (double x : {0.0, 1.0, 3.0}) {
        const double at = kernel_eval(x, -2.0, 0.0);
        const double below = kernel_eval(x, -2.0 - 1e-8, 0.0);
        const double above = kernel_eval(x, -2.0 + 1e-8, 0.0);
        CHECK(std::abs(at - below) <= 1e-4);
        CHECK(std::abs(at - above) <= 1e-4);
    }
}

TEST_CASE("model: kernel sign structure by regime") {
    // two real rates: positive everywhere
    double min_two = 1e300;
    for (int i = 0; i <= 300; ++i) min_two = std::min(min_two, kernel_eval(0.05 * i, -3.0, 0.0));
    CHECK(min_two >= 0.0);
    // oscillatory: strictly negative somewhere
    double min_osc = 1e300;
    for (int i = 0; i <= 300; ++i) min_osc = std::min(min_osc, kernel_eval(0.05 * i, 1.0, 0.0));
    CHECK(min_osc < -1e-4);
}

TEST_CASE("model: kernel symmetry and domain checks") {
    CHECK(kernel_eval(1.7, -1.0, 0.2) == doctest::Approx(kernel_eval(-1.7, -1.0, 0.2)).epsilon(1e-14));
    CHECK_THROWS_AS(kernel_eval(0.0, -1.0, 1.2), DomainError);
    CHECK_THROWS_AS(kernel_eval(0.0, 2.5, 0.0), DomainError);
    CHECK_THROWS_AS(kernel_oracle(0.0, 2.5, 0.0), DomainError);
}
