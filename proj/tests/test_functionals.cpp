#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>

#include "doctest.h"
#include "gsbq/functionals.hpp"
#include "gsbq/grid.hpp"
#include "gsbq/kernels.hpp"
#include "gsbq/petviashvili.hpp"
#include "helpers.hpp"

using namespace gsbq;
using testutil::random_smooth_field;

namespace {

constexpr double pi = std::numbers::pi;

SolitaryWave& cached_wave() {
    static SolitaryWave wave = [] {
        GridPtr g = make_grid(120.0, 2048);
        return petviashvili_solve({-3.0, 0.0, 2.0, Parity::Odd}, g, gaussian_init(g));
    }();
    return wave;
}

SolitaryWave& cached_moving_wave() {
    static SolitaryWave wave = [] {
        GridPtr g = make_grid(120.0, 2048);
        return petviashvili_solve({-1.0, 0.3, 2.0, Parity::Odd}, g, gaussian_init(g));
    }();
    return wave;
}

StatePair traveling_pair(const SolitaryWave& wave) {
    StatePair w{wave.profile, wave.profile};
    kern::scale(std::span<double>(w.v.samples), -wave.params.c);
    return w;
}

}  // namespace

TEST_CASE("functionals: constraint functionals coincide at a ground state") {
    const SolitaryWave& wave = cached_moving_wave();
    const WaveParams& wp = wave.params;
    const double I = functional_I(wave.profile, wp.beta, wp.c);
    const double K = functional_K(wave.profile, wp.p, wp.parity);
    CHECK(std::abs(I - K) / K <= 1e-8);
    CHECK(wave.diagnostics.pohozaev_rel <= 1e-6);
}

TEST_CASE("functionals: radial derivative of the action vanishes at a ground state") {
    const SolitaryWave& wave = cached_moving_wave();
    StatePair w = traveling_pair(wave);
    ActionNehari an = action_and_nehari(w, wave.params);
    const double I = functional_I(wave.profile, wave.params.beta, wave.params.c);
    CHECK(std::abs(an.nehari_P) / I <= 1e-6);
}

TEST_CASE("functionals: radial derivative matches a finite difference of the action") {
    // away from any critical point, so both sides are order one
    GridPtr g = make_grid(60.0, 1024);
    WaveParams wp{-1.0, 0.3, 2.0, Parity::Odd};
    RealField u = gaussian_init(g, 0.8, 4.0);
    RealField v = gaussian_init(g, 0.5, 6.0);
    StatePair w{u, v};
    ActionNehari center = action_and_nehari(w, wp);

    const double eps = 1e-5;
    StatePair up{u, v}, dn{u, v};
    kern::scale(std::span<double>(up.u.samples), 1.0 + eps);
    kern::scale(std::span<double>(up.v.samples), 1.0 + eps);
    kern::scale(std::span<double>(dn.u.samples), 1.0 - eps);
    kern::scale(std::span<double>(dn.v.samples), 1.0 - eps);
    const double fd =
        (action_and_nehari(up, wp).action_L - action_and_nehari(dn, wp).action_L) / (2.0 * eps);
    CHECK(fd == doctest::Approx(center.nehari_P).epsilon(1e-6));
}

TEST_CASE("functionals: action equals E + cQ on arbitrary pairs") {
    GridPtr g = make_grid(60.0, 1024);
    WaveParams wp{-0.7, 0.4, 2.5, Parity::Odd};
    StatePair w{random_smooth_field(g, 31, 0.6), random_smooth_field(g, 77, 0.4)};
    FunctionalReport r = conserved_quantities(w, wp);
    ActionNehari an = action_and_nehari(w, wp);
    CHECK(an.action_L ==
          doctest::Approx(r.E + wp.c * r.Q).epsilon(1e-11));
}

TEST_CASE("functionals: conserved quantities against analytic integrals") {
    GridPtr g = make_grid(30.0, 1024);
    WaveParams wp{-1.0, 0.3, 2.0, Parity::Odd};
    RealField u = make_field(g), v = make_field(g);
    for (std::size_t j = 0; j < g->n_points; ++j) {
        const double x = g->nodes[j];
        u.samples[j] = std::exp(-x * x);
        v.samples[j] = std::exp(-(x - 1.0) * (x - 1.0));
    }
    FunctionalReport r = conserved_quantities({u, v}, wp);

    CHECK(r.Q1 == doctest::Approx(std::sqrt(pi)).epsilon(1e-13));
    CHECK(r.Q2 == doctest::Approx(std::sqrt(pi)).epsilon(1e-13));
    CHECK(r.Q == doctest::Approx(std::exp(-0.5) * std::sqrt(pi / 2.0)).epsilon(1e-13));

    // E and the k = 1 correction against physical quadratures with analytic derivatives
    double e_ref = 0, q3_ref = 0;
    for (std::size_t j = 0; j < g->n_points; ++j) {
        const double x = g->nodes[j];
        const double uu = std::exp(-x * x);
        const double ux = -2.0 * x * uu;
        const double uxx = (4.0 * x * x - 2.0) * uu;
        const double y = x - 1.0;
        const double vv = std::exp(-y * y);
        const double vxx = (4.0 * y * y - 2.0) * vv;
        const double F = std::abs(uu) * uu * uu / 3.0;  // odd family, p = 2
        e_ref += 0.5 * (uu * uu - wp.beta * ux * ux + uxx * uxx + vv * vv) - F;
        q3_ref += uu * vxx;
    }
    e_ref *= g->dx;
    q3_ref *= g->dx;
    CHECK(r.E == doctest::Approx(e_ref).epsilon(1e-11));
    CHECK(r.Q3_k1 == doctest::Approx(q3_ref).epsilon(1e-11));
}

TEST_CASE("functionals: quadratic form is symmetric") {
    const SolitaryWave& wave = cached_moving_wave();
    GridPtr g = wave.profile.grid;
    StatePair w1{random_smooth_field(g, 102, 0.5), random_smooth_field(g, 103, 0.5)};
    StatePair w2{random_smooth_field(g, 104, 0.5), random_smooth_field(g, 105, 0.5)};
    const double a = h_quadratic_form(w1, w2, wave);
    const double b = h_quadratic_form(w2, w1, wave);
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
}

TEST_CASE("functionals: quadratic form on the wave itself equals -2(p+1) d") {
    for (const SolitaryWave* wave : {&cached_wave(), &cached_moving_wave()}) {
        StatePair w = traveling_pair(*wave);
        FunctionalReport r = functional_report(*wave);
        const double form = h_quadratic_form(w, w, *wave);
        const double target = -2.0 * (wave->params.p + 1.0) * r.d_value;
        CHECK(std::abs(form - target) <= 1e-4 * std::max(1.0, std::abs(target)));
    }
}

TEST_CASE("functionals: direction values match their closed forms") {
    for (const SolitaryWave* pw : {&cached_wave(), &cached_moving_wave()}) {
        const SolitaryWave& wave = *pw;
        const WaveParams& wp = wave.params;
        InstabilityDirections dir = instability_direction_forms(wave);

        const double K = functional_K(wave.profile, wp.p, wp.parity);
        const double mass = inner(wave.profile, wave.profile);
        Spectrum spec = forward(wave.profile);
        const Grid& g = *wave.profile.grid;
        std::vector<double> w2(g.half_size());
        for (std::size_t k = 0; k < w2.size(); ++k) w2[k] = g.xi_half(k) * g.xi_half(k);
        const double grad2 = spectral_quadratic(g, spec, w2);

        const double target_i = (1.0 - wp.p) * K + 4.0 * wp.c * wp.c * mass;
        const double target_ii =
            (1.0 - wp.p) * (wp.p - 9.0) / (wp.p + 1.0) * K + 8.0 * wp.beta * grad2;
        CHECK(std::abs(dir.dir_i_value - target_i) <= 1e-4 * std::max(1.0, std::abs(target_i)));
        CHECK(std::abs(dir.dir_ii_value - target_ii) <= 1e-4 * std::max(1.0, std::abs(target_ii)));
        CHECK(std::abs(dir.q_orth_i) <= 1e-8 * std::max(1.0, K));
        CHECK(std::abs(dir.q_orth_ii) <= 1e-8 * std::max(1.0, K));
    }
}

TEST_CASE("functionals: ground state minimizes the constrained ratio") {
    const SolitaryWave& wave = cached_wave();
    const WaveParams& wp = wave.params;
    GridPtr g = wave.profile.grid;
    FunctionalReport base = functional_report(wave);
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 20; ++trial) {
        const double size = 0.01 + 0.3 * testutil::unit_draw(rng);
        RealField perturbed = wave.profile;
        RealField noise = random_smooth_field(g, rng(), size);
        for (std::size_t j = 0; j < g->n_points; ++j) perturbed.samples[j] += noise.samples[j];
        const double I = functional_I(perturbed, wp.beta, wp.c);
        const double K = functional_K(perturbed, wp.p, wp.parity);
        REQUIRE(K > 0);
        const double ratio = I / std::pow(K, 2.0 / (wp.p + 1.0));
        CHECK(ratio >= base.m_ratio * (1.0 - 1e-8));
    }
}

TEST_CASE("functionals: report fields are mutually consistent at a ground state") {
    const SolitaryWave& wave = cached_moving_wave();
    FunctionalReport r = functional_report(wave);
    const WaveParams& wp = wave.params;
    CHECK(r.d_value ==
          doctest::Approx((wp.p - 1.0) / (2.0 * (wp.p + 1.0)) * r.K).epsilon(1e-14));
    // wave action: d = E + cQ on the traveling pair
    CHECK(r.E + wp.c * r.Q == doctest::Approx(r.d_value).epsilon(1e-6));
    CHECK(r.m_ratio == doctest::Approx(r.I / std::pow(r.K, 2.0 / (wp.p + 1.0))).epsilon(1e-13));
}
