#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "gsbq/errors.hpp"
#include "gsbq/evolution.hpp"
#include "gsbq/fft.hpp"
#include "gsbq/functionals.hpp"
#include "gsbq/grid.hpp"
#include "gsbq/kernels.hpp"
#include "gsbq/petviashvili.hpp"
#include "helpers.hpp"

using namespace gsbq;
using testutil::random_smooth_field;
using testutil::sup_diff;

namespace {

StatePair smooth_pair(const GridPtr& g, double amp_u, double amp_v) {
    RealField u = make_field(g), v = make_field(g);
    for (std::size_t j = 0; j < g->n_points; ++j) {
        const double x = g->nodes[j];
        u.samples[j] = amp_u * std::exp(-x * x / 4.0);
        v.samples[j] = amp_v * x * std::exp(-x * x / 9.0);
    }
    return {u, v};
}

double quadratic_energy(const StatePair& w, double beta) {
    const Grid& g = *w.u.grid;
    Spectrum su = forward(w.u), sv = forward(w.v);
    std::vector<double> wu(g.half_size()), one(g.half_size(), 1.0);
    for (std::size_t k = 0; k < wu.size(); ++k) {
        const double x2 = g.xi_half(k) * g.xi_half(k);
        wu[k] = 1.0 - beta * x2 + x2 * x2;
    }
    return 0.5 * (spectral_quadratic(g, su, wu) + spectral_quadratic(g, sv, one));
}

double pair_diff_norm(const StatePair& a, const StatePair& b) {
    RealField du = a.u, dv = a.v;
    for (std::size_t j = 0; j < du.samples.size(); ++j) {
        du.samples[j] -= b.u.samples[j];
        dv.samples[j] -= b.v.samples[j];
    }
    return x_norm({du, dv});
}

}  // namespace

TEST_CASE("evolution: linear flow composes as a group") {
    GridPtr g = make_grid(40.0, 256);
    StatePair w{random_smooth_field(g, 11, 0.5), random_smooth_field(g, 12, 0.5)};

    StatePair two = w;
    linear_propagate(-1.0, 0.3, two);
    linear_propagate(-1.0, 0.5, two);
    StatePair one = w;
    linear_propagate(-1.0, 0.8, one);
    CHECK(sup_diff(one.u, two.u) <= 1e-12);
    CHECK(sup_diff(one.v, two.v) <= 1e-12);

    StatePair back = one;
    linear_propagate(-1.0, -0.8, back);
    CHECK(sup_diff(back.u, w.u) <= 1e-12);
    CHECK(sup_diff(back.v, w.v) <= 1e-12);
}

TEST_CASE("evolution: linear flow conserves the quadratic invariants") {
    GridPtr g = make_grid(40.0, 256);
    StatePair w{random_smooth_field(g, 21, 0.7), random_smooth_field(g, 22, 0.4)};
    const double e0 = quadratic_energy(w, -1.0);
    const double q0 = inner(w.u, w.v);
    StatePair moved = w;
    linear_propagate(-1.0, 2.7, moved);
    CHECK(quadratic_energy(moved, -1.0) == doctest::Approx(e0).epsilon(1e-11));
    CHECK(inner(moved.u, moved.v) == doctest::Approx(q0).epsilon(1e-11));
}

TEST_CASE("evolution: linear flow commutes with translation") {
    GridPtr g = make_grid(40.0, 256);
    StatePair w{random_smooth_field(g, 31, 0.5), random_smooth_field(g, 32, 0.5)};

    StatePair a{translate(w.u, 3.1), translate(w.v, 3.1)};
    linear_propagate(-0.5, 0.9, a);
    StatePair b = w;
    linear_propagate(-0.5, 0.9, b);
    b = {translate(b.u, 3.1), translate(b.v, 3.1)};
    CHECK(sup_diff(a.u, b.u) <= 1e-12);
    CHECK(sup_diff(a.v, b.v) <= 1e-12);
}

TEST_CASE("evolution: symbol positivity is enforced") {
    GridPtr g = make_grid(40.0, 256);
    StatePair w = smooth_pair(g, 0.3, 0.2);
    CHECK_THROWS_AS(linear_propagate(2.0, 0.1, w), DomainError);
    EvolveOptions opt;
    opt.t_final = 0.01;
    CHECK_THROWS_AS(evolve({2.5, 0.0, 2.0, Parity::Odd}, w, opt), DomainError);
    CHECK_THROWS_AS(evolve({-1.0, 0.0, 1.0, Parity::Odd}, w, opt), DomainError);
    EvolveOptions bad;
    bad.dt = 0;
    CHECK_THROWS_AS(evolve({-1.0, 0.0, 2.0, Parity::Odd}, w, bad), DomainError);
}

TEST_CASE("evolution: invariants drift within tolerance on smooth data") {
    GridPtr g = make_grid(50.0, 512);
    StatePair w = smooth_pair(g, 0.3, 0.2);
    EvolveOptions opt;
    opt.t_final = 1.0;
    opt.dt = 1e-3;
    opt.record_every = 100;
    EvolveResult res = evolve({-1.0, 0.0, 2.0, Parity::Odd}, w, opt);
    REQUIRE_FALSE(res.blew_up);
    REQUIRE(res.monitor.size() == 11);
    for (const auto& row : res.monitor) {
        CHECK(row.e_drift <= 1e-8);
        CHECK(row.q_drift <= 1e-8);
        CHECK(row.q1_drift <= 1e-12);
        CHECK(row.q2_drift <= 1e-12);
    }
}

TEST_CASE("evolution: stepper converges at fourth order") {
    GridPtr g = make_grid(50.0, 512);
    StatePair w = smooth_pair(g, 1.2, 0.5);
    WaveParams wp{-1.0, 0.0, 2.0, Parity::Odd};

    auto run = [&](double dt) {
        EvolveOptions opt;
        opt.t_final = 0.5;
        opt.dt = dt;
        opt.record_every = 1000000;
        return evolve(wp, w, opt).state;
    };
    StatePair ref = run(1.25e-4);
    const double e_mid = pair_diff_norm(run(1e-3), ref);
    const double e_big = pair_diff_norm(run(2e-3), ref);
    REQUIRE(e_mid > 1e-12);  // above roundoff so the ratio is meaningful
    const double ratio = e_big / e_mid;
    CHECK(ratio >= 8.0);
    CHECK(ratio <= 32.0);
}

TEST_CASE("evolution: solitary wave travels at its design speed") {
    GridPtr g = make_grid(200.0, 2048);
    SolitaryWave wave = exact_profile(2, 0.4, g);
    const double c = wave.params.c;
    RealField mv = wave.profile;
    kern::scale(std::span<double>(mv.samples), -c);
    StatePair init{wave.profile, mv};

    EvolveOptions opt;
    opt.t_final = 1.0;
    opt.dt = 1e-3;
    opt.record_every = 500;
    EvolveResult res = evolve(wave.params, init, opt);
    REQUIRE_FALSE(res.blew_up);

    RealField shifted = translate(wave.profile, -c * opt.t_final);
    RealField mshift = shifted;
    kern::scale(std::span<double>(mshift.samples), -c);
    CHECK(pair_diff_norm(res.state, {shifted, mshift}) <= 1e-4);

    OrbitalFit fit = orbital_distance(res.state, wave.profile, c);
    CHECK(fit.distance <= 1e-4);
    CHECK(fit.shift == doctest::Approx(c * opt.t_final).epsilon(1e-3));
}

TEST_CASE("evolution: orbital fit recovers a planted shift") {
    GridPtr g = make_grid(100.0, 1024);
    SolitaryWave wave = exact_profile(2, 0.4, g);
    const double c = wave.params.c;
    RealField su = translate(wave.profile, -7.3);
    RealField sv = su;
    kern::scale(std::span<double>(sv.samples), -c);
    OrbitalFit fit = orbital_distance({su, sv}, wave.profile, c);
    CHECK(fit.distance <= 1e-8);
    CHECK(fit.shift == doctest::Approx(7.3).epsilon(1e-6));
}

TEST_CASE("evolution: perturbations are deterministic and sized as requested") {
    GridPtr g = make_grid(100.0, 1024);
    SolitaryWave wave = exact_profile(2, 0.0, g);
    const RealField& phi = wave.profile;
    const double delta = 1e-2;

    RealField mphi = phi;
    kern::scale(std::span<double>(mphi.samples), -0.0);
    const double base_norm = x_norm({phi, mphi});

    SUBCASE("scale") {
        StatePair p = make_perturbation(phi, 0.0, PerturbKind::Scale, delta, 1);
        for (std::size_t j = 0; j < phi.samples.size(); ++j) {
            CHECK(p.u.samples[j] == doctest::Approx((1.0 + delta) * phi.samples[j]).epsilon(1e-15));
        }
    }
    SUBCASE("growth direction") {
        StatePair p = make_perturbation(phi, 0.4, PerturbKind::DirectionI, delta, 1);
        double worst = 0;
        for (std::size_t j = 0; j < phi.samples.size(); ++j) {
            worst = std::max(worst,
                             std::abs(p.u.samples[j] - (1.0 + delta) * phi.samples[j]));
            worst = std::max(worst,
                             std::abs(p.v.samples[j] - (-0.4 + delta * 0.4) * phi.samples[j]));
        }
        CHECK(worst <= 1e-13);
    }
    SUBCASE("band-limited noise") {
        StatePair p1 = make_perturbation(phi, 0.0, PerturbKind::BandlimitedNoise, delta, 42);
        StatePair p2 = make_perturbation(phi, 0.0, PerturbKind::BandlimitedNoise, delta, 42);
        CHECK(sup_diff(p1.u, p2.u) == 0.0);
        CHECK(sup_diff(p1.v, p2.v) == 0.0);
        StatePair p3 = make_perturbation(phi, 0.0, PerturbKind::BandlimitedNoise, delta, 43);
        CHECK(sup_diff(p1.u, p3.u) > 0.0);

        RealField nu = p1.u, nv = p1.v;
        for (std::size_t j = 0; j < nu.samples.size(); ++j) {
            nu.samples[j] -= phi.samples[j];
            nv.samples[j] -= mphi.samples[j];
        }
        CHECK(x_norm({nu, nv}) == doctest::Approx(delta * base_norm).epsilon(1e-12));

        Spectrum s = forward(nu);
        const Grid& grid = *g;
        for (std::size_t k = 0; k < grid.half_size(); ++k) {
            if (grid.xi_half(k) > 2.0 + 1e-12) CHECK(std::abs(s[k]) <= 1e-10);
        }
        CHECK(std::abs(s[0]) <= 1e-10);  // mean-free noise
    }
}

TEST_CASE("evolution: norm explosion stops the run and flags it") {
    GridPtr g = make_grid(50.0, 512);
    StatePair w = smooth_pair(g, 2.0, 0.0);
    EvolveOptions opt;
    opt.t_final = 1.0;
    opt.dt = 1e-3;
    opt.record_every = 100;
    opt.blowup_factor = 1.01;
    EvolveResult res = evolve({-1.0, 0.0, 2.0, Parity::Odd}, w, opt);
    CHECK(res.blew_up);
    CHECK(res.t_reached > 0.0);
    CHECK(res.t_reached < 1.0);
    CHECK(res.monitor.size() == 1);  // tripped before the first scheduled record
}

TEST_CASE("evolution: non-finite states raise instead of returning") {
    GridPtr g = make_grid(50.0, 512);
    StatePair w = smooth_pair(g, 2.0, 0.5);
    EvolveOptions opt;
    opt.t_final = 2000.0;
    opt.dt = 100.0;
    opt.record_every = 1;
    opt.blowup_factor = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(evolve({-1.0, 0.0, 2.0, Parity::Odd}, w, opt), NonFinite);
}

TEST_CASE("evolution: monitor cadence and snapshots") {
    GridPtr g = make_grid(50.0, 256);
    StatePair w = smooth_pair(g, 0.2, 0.1);
    EvolveOptions opt;
    opt.t_final = 1.0;
    opt.dt = 1e-3;
    opt.record_every = 100;
    opt.keep_snapshots = true;
    EvolveResult res = evolve({-1.0, 0.0, 2.0, Parity::Odd}, w, opt);
    REQUIRE(res.monitor.size() == 11);
    CHECK(res.monitor.front().t == 0.0);
    CHECK(res.monitor.back().t == 1.0);
    for (std::size_t k = 0; k < res.monitor.size(); ++k) {
        CHECK(res.monitor[k].t == doctest::Approx(0.1 * k).epsilon(1e-12));
    }
    REQUIRE(res.snapshots.size() == res.monitor.size());
    CHECK(sup_diff(res.snapshots.back().u, res.state.u) == 0.0);
    CHECK(same_grid(res.snapshots.front().u, res.state.u));
}
